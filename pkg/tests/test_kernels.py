import os
import subprocess
import sys

import pytest
from hypothesis import given, strategies as st

import oracles
from jensen_lab import _pykernels, kernels

try:
    from jensen_lab import _ckernels
except ImportError:  # pragma: no cover
    _ckernels = None

BACKENDS = [pytest.param(_pykernels, id="python")]
if _ckernels is not None:
    BACKENDS.append(pytest.param(_ckernels, id="cython"))

needs_c = pytest.mark.skipif(_ckernels is None, reason="compiled extension not built")


@pytest.mark.parametrize("impl", BACKENDS)
def test_splitmix_reference_streams(impl):
    gamma = 0x9E3779B97F4A7C15
    for start, expected in ((0, oracles.SPLITMIX_SEED0), (1234567, oracles.SPLITMIX_SEED1234567)):
        got = [impl.splitmix64((start + i * gamma) & oracles.M64) for i in range(3)]
        assert got == list(expected)


@pytest.mark.parametrize("impl", BACKENDS)
@given(data=st.binary(max_size=80), seed=st.integers(0, (1 << 64) - 1), dim=st.integers(1, 4))
def test_noise_matches_oracle(impl, data, seed, dim):
    assert impl.noise_values(data, seed, dim, 0.75) == oracles.noise_oracle(data, seed, dim, 0.75)


# frozen from the struct-based oracle
FROZEN_IDENTITY_SEED42 = [-0.5472234288904911, -0.9997750589446035]


def test_noise_frozen_values():
    # identity of H encodes as b"H" + three zero integers
    enc = b"H" + b"\x00\x00\x00\x01\x00" * 3
    assert kernels.noise_values(enc, 42, 2, 1.0) == FROZEN_IDENTITY_SEED42
    assert kernels.bytes_hash(b"") == 0


@pytest.mark.parametrize("impl", BACKENDS)
@given(data=st.binary(max_size=64), seed=st.integers(0, (1 << 64) - 1))
def test_noise_range(impl, data, seed):
    for v in impl.noise_values(data, seed, 3, 0.5):
        assert -0.5 <= v < 0.5


@needs_c
@given(st.binary(max_size=200))
def test_hash_parity(data):
    assert _ckernels.bytes_hash(data) == _pykernels.bytes_hash(data)


@pytest.mark.parametrize(
    "coeffs", [(0, 0, 1, -2), (0, 0, 1, -1), (3, -2, 0, 0), (0, 0, 0, 1), (5, 7, 2, -4)]
)
@pytest.mark.parametrize("impl", BACKENDS)
def test_box_scan_matches_brute_force(impl, coeffs):
    a, b, c, d = coeffs

    def f(x):
        return a * x[0] + b * x[1] + c * x[0] * x[1] + d * x[2]

    r = 2
    rng = range(-r, r + 1)
    box = [(m, n, k) for m in rng for n in rng for k in rng]
    nonzero, max_abs, witness = 0, 0, None
    for x in box:
        for y in box:
            yinv = (-y[0], -y[1], y[0] * y[1] - y[2])
            dft = f(oracles.heisenberg_product(x, y)) + f(oracles.heisenberg_product(x, yinv)) - 2 * f(x)
            if dft:
                nonzero += 1
                max_abs = max(max_abs, abs(dft))
                witness = witness or (*x, *y)
    got = impl.heisenberg_box_scan(r, a, b, c, d)
    assert got == (len(box) ** 2, nonzero, max_abs, witness)


def test_box_scan_phi_radius3():
    assert kernels.heisenberg_box_scan(3, 0, 0, 1, -2) == (117649, 0, 0, None)


def test_box_scan_overflow_falls_back_to_exact():
    big = 1 << 70
    pairs, nonzero, max_abs, _ = kernels.heisenberg_box_scan(1, 0, 0, big, -big)
    assert pairs == 729 and nonzero > 0 and max_abs % big == 0


def test_pure_env_forces_fallback():
    env = dict(os.environ, JENSEN_LAB_PURE="1")
    out = subprocess.run(
        [sys.executable, "-c", "from jensen_lab import kernels; print(kernels.BACKEND)"],
        env=env, capture_output=True, text=True, check=True,
    )
    assert out.stdout.strip() == "python"


@needs_c
@pytest.mark.skipif(os.environ.get("JENSEN_LAB_PURE") == "1", reason="fallback forced")
def test_compiled_backend_selected_by_default():
    assert kernels.BACKEND == "cython"


@needs_c
def test_benchmark_script_runs(capsys):
    import importlib.util
    from pathlib import Path

    path = Path(__file__).parents[1] / "benchmarks" / "bench_kernels.py"
    spec = importlib.util.spec_from_file_location("bench_kernels", path)
    mod = importlib.util.module_from_spec(spec)
    spec.loader.exec_module(mod)
    assert mod.main(["--radius", "1", "--encodings", "50", "--repeat", "1"]) == 0
    assert "speedup" in capsys.readouterr().out
