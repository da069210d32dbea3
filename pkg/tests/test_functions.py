import numpy as np
import pytest
from hypothesis import given, strategies as st

from jensen_lab.analysis import jensen_defect
from jensen_lab.functions import (
    HeisenbergJensenParams,
    NoiseModel,
    bounded_noise,
    character_function,
    heisenberg_jensen,
    heisenberg_phi,
    noise_function,
    noisy_jensen,
    phi_function,
    quadratic_function,
    table_function,
)
from jensen_lab.groups import FreeAbelian, Heisenberg, HeisenbergElement, WordSampler

H = Heisenberg()


def test_noise_model_validation():
    with pytest.raises(ValueError):
        NoiseModel(-0.1)
    with pytest.raises(ValueError):
        NoiseModel(0.1, seed=-1)
    with pytest.raises(ValueError):
        NoiseModel(0.1, seed=1 << 64)


def test_noise_is_deterministic_and_bounded():
    m = NoiseModel(0.25, 17, dim=3)
    x = H.element(4, -2, 9)
    v = bounded_noise(m, H, x)
    assert np.array_equal(v, bounded_noise(m, H, x))
    assert v.shape == (3,) and np.all(np.abs(v) <= 0.25)


def test_seed_change_decorrelates():
    xs = set(WordSampler(H, seed=1, max_length=12).elements(10_000))
    a, b = NoiseModel(1.0, 1), NoiseModel(1.0, 2)
    differ = sum(bounded_noise(a, H, x)[0] != bounded_noise(b, H, x)[0] for x in xs)
    assert differ >= 0.99 * len(xs)


def test_zero_noise_is_identity():
    j = phi_function(H)
    assert noisy_jensen(j, NoiseModel(0.0, 3)) is j


@given(st.floats(0.0, 5.0), st.integers(0, 2**40))
def test_noisy_jensen_defect_bound(eps, seed):
    j = heisenberg_jensen(HeisenbergJensenParams(1.0, -1.0, 0.5))
    f = noisy_jensen(j, NoiseModel(eps, seed))
    assert f.defect_bound == pytest.approx(4 * eps)
    for x, y in WordSampler(H, seed=seed % 97).pairs(20):
        assert jensen_defect(f, x, y) <= 4 * eps + 1e-9


def test_noisy_dimension_mismatch():
    with pytest.raises(ValueError):
        noisy_jensen(phi_function(H), NoiseModel(0.1, 1, dim=2))


def test_noise_bound_scales_with_dimension():
    f = noise_function(H, NoiseModel(0.5, 1, dim=4))
    assert f.defect_bound == pytest.approx(4.0)


def test_phi_examples():
    assert heisenberg_phi(HeisenbergElement(1, 0, 0)) == 0
    assert heisenberg_phi(HeisenbergElement(2, 3, 1)) == 4
    assert heisenberg_phi(HeisenbergElement(0, 0, 1)) == -2


def test_heisenberg_jensen_examples():
    x = H.element(1, 1, 0)
    assert heisenberg_jensen(HeisenbergJensenParams(2, -1, 0.5))(x)[0] == 1.5
    m_only = heisenberg_jensen(HeisenbergJensenParams(1, 0, 0))
    y = H.element(7, -3, 11)
    assert m_only(y)[0] == 7.0
    assert heisenberg_jensen(HeisenbergJensenParams(0, 0, 1))(y)[0] == phi_function(H)(y)[0]


def test_character_and_quadratic():
    z2 = FreeAbelian(2)
    assert character_function(z2, [1.0, 3.0])((2, -1))[0] == -1.0
    assert character_function(z2)((2, -1))[0] == 1.0
    with pytest.raises(ValueError):
        quadratic_function(H)


def test_table_function():
    t = table_function(H, {H.a: 2.0}, default=-1.0, defect_bound=3.0)
    assert t(H.a)[0] == 2.0 and t(H.b)[0] == -1.0 and t.defect_bound == 3.0
