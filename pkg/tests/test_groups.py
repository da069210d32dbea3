from fractions import Fraction
import itertools
import random

import pytest
from hypothesis import given, strategies as st

import oracles
from jensen_lab.groups import (
    INT_ZERO,
    CharacteristicTwoError,
    Cyclic,
    DescriptorError,
    DirectProduct,
    FreeAbelian,
    GroupError,
    Heisenberg,
    HeisenbergElement,
    PrimeField,
    RationalField,
    SubgroupFlags,
    Triangular2,
    WordSampler,
    Wreath,
    encode_int,
    heisenberg_to_ut3,
    matmul3,
    parse_group,
    ut3_to_heisenberg,
)
from jensen_lab.groups.fields import is_prime, valuation

H = Heisenberg()
Z = FreeAbelian(1)
Z3 = FreeAbelian(3)
C6 = Cyclic(6)
F7 = Triangular2(PrimeField(7))
Q = Triangular2(RationalField())
WZ = Wreath(Z, 4)
WP = Wreath(DirectProduct([Z, Cyclic(3)]), 3)

ints = st.integers(-10**6, 10**6)
heis = st.builds(HeisenbergElement, ints, ints, ints)
nonzero_q = st.fractions(max_denominator=50).filter(lambda q: q != 0)
t2q = st.builds(lambda a, t, b: Q.element(a, t, b), nonzero_q, st.fractions(max_denominator=50), nonzero_q)
t2f = st.sampled_from(list(F7.elements()))


def wreath_strategy(w: Wreath, base):
    keys = st.integers(0, (1 << w.factors) - 1)
    return st.builds(
        lambda s, d: w.element(s, d),
        st.integers(0, (1 << w.factors) - 1),
        st.dictionaries(keys, base, max_size=4),
    )


CASES = [
    (H, heis),
    (Z3, st.tuples(ints, ints, ints)),
    (C6, st.integers(0, 5)),
    (F7, t2f),
    (Q, t2q),
    (WZ, wreath_strategy(WZ, st.tuples(st.integers(-5, 5)))),
    (WP, wreath_strategy(WP, st.tuples(st.tuples(st.integers(-5, 5)), st.integers(0, 2)))),
]
IDS = [g.descriptor for g, _ in CASES]


@pytest.mark.parametrize("group,elem", CASES, ids=IDS)
def test_group_laws(group, elem):
    @given(elem, elem, elem)
    def run(x, y, z):
        e = group.identity()
        assert group.multiply(group.multiply(x, y), z) == group.multiply(x, group.multiply(y, z))
        assert group.multiply(x, e) == x == group.multiply(e, x)
        assert group.multiply(x, group.inverse(x)) == e == group.multiply(group.inverse(x), x)
        assert group.contains(group.multiply(x, y))

    run()


@pytest.mark.parametrize("group,elem", CASES, ids=IDS)
def test_power_matches_repeated_product(group, elem):
    @given(elem, st.integers(-6, 6))
    def run(x, n):
        y = group.identity()
        step = x if n >= 0 else group.inverse(x)
        for _ in range(abs(n)):
            y = group.multiply(y, step)
        assert group.power(x, n) == y

    run()


@pytest.mark.parametrize("group,elem", CASES, ids=IDS)
def test_encoding_tracks_equality(group, elem):
    @given(elem, elem)
    def run(x, y):
        assert (group.encode(x) == group.encode(y)) == (x == y)

    run()


@pytest.mark.parametrize("group,elem", CASES, ids=IDS)
def test_commutator_and_conjugate_definitions(group, elem):
    @given(elem, elem)
    def run(x, y):
        inv, mul = group.inverse, group.multiply
        assert group.commutator(x, y) == mul(mul(inv(x), inv(y)), mul(x, y))
        assert group.conjugate(x, y) == mul(mul(inv(y), x), y)
        assert group.conjugate(x, group.identity()) == x

    run()


@pytest.mark.parametrize("group", [H, Z3, C6, F7, WZ, WP], ids=lambda g: g.descriptor)
def test_encoding_injective_on_samples(group):
    s = WordSampler(group, seed=3)
    seen = {}
    for x in s.elements(10_000):
        enc = group.encode(x)
        assert seen.setdefault(enc, x) == x


def test_encode_int():
    assert encode_int(0) == INT_ZERO == b"\x00\x00\x00\x01\x00"
    assert encode_int(-1) != encode_int(255)
    assert len({encode_int(n) for n in range(-300, 300)}) == 600


def test_checked_ops_reject_foreign_elements():
    with pytest.raises(GroupError):
        H.multiply((1, 2, 3), H.a)
    with pytest.raises(GroupError):
        Z.inverse(5)
    with pytest.raises(GroupError):
        C6.multiply(7, 1)


# -- integers -----------------------------------------------------------------


def test_integer_examples():
    assert Z.multiply((2,), (3,)) == (5,)
    assert Z.inverse((5,)) == (-5,)
    assert Z.element_order((1,), 1000) is None
    assert Z.commutator((4,), (9,)) == Z.identity()


def test_cyclic():
    assert C6.multiply(4, 5) == 3
    assert C6.element_order(2) == 3
    assert sorted(C6.elements()) == list(range(6))
    assert C6.order == 6


def test_direct_product():
    G = DirectProduct([Z, Cyclic(3)])
    x = ((2,), 1)
    assert G.power(x, 3) == ((6,), 0)
    assert G.element_order(((0,), 2)) == 3
    assert G.descriptor == "z*zn:3"
    assert G.character([2.0])(x) == 4.0


# -- Heisenberg ---------------------------------------------------------------


def test_heisenberg_examples():
    a, b, c = H.a, H.b, H.c
    assert H.multiply(a, b) == (1, 1, 0)
    assert H.multiply(b, a) == (1, 1, 1)
    x = H.element(2, 3, 1)
    assert H.multiply(x, H.element(-2, -3, 5)) == (0, 0, 0)
    assert H.inverse(x) == (-2, -3, 5)
    ab = H.element(1, 1, 0)
    assert H.power(ab, 2) == (2, 2, 1)
    assert H.power(ab, 4) == (4, 4, 6)
    assert H.power(ab, 0) == H.identity()
    assert H.commutator(b, a) == c == (0, 0, 1)
    assert H.commutator(a, b) == (0, 0, -1)
    # b^-1 a b = a c^-1 under x^b = b^-1 x b
    assert H.conjugate(a, b) == H.multiply(a, H.inverse(c)) == (1, 0, -1)


def test_heisenberg_inverse_brute_force():
    box = range(-3, 4)
    for m, n, k in itertools.product(box, box, box):
        x = (m, n, k)
        inv = (-m, -n, m * n - k)
        assert oracles.heisenberg_product(x, inv) == (0, 0, 0)
        assert H.inverse(HeisenbergElement(*x)) == inv


@given(heis, heis)
def test_heisenberg_product_matches_matrices(x, y):
    assert H.multiply(x, y) == oracles.heisenberg_product(x, y)


@given(heis, st.integers(-40, 40))
def test_heisenberg_power_closed_form(x, n):
    assert H.power(x, n) == oracles.heisenberg_power(x, n)


@given(heis, heis, heis)
def test_heisenberg_is_metabelian(x, y, z):
    assert H.commutator(H.commutator(x, y), z) == H.identity()


def test_ut3_map():
    assert heisenberg_to_ut3(HeisenbergElement(1, 2, 3)) == ((1, 2, 3), (0, 1, 1), (0, 0, 1))
    assert heisenberg_to_ut3(H.identity()) == ((1, 0, 0), (0, 1, 0), (0, 0, 1))
    assert ut3_to_heisenberg(((1, 2, 3), (0, 1, 1), (0, 0, 1))) == (1, 2, 3)
    with pytest.raises(ValueError):
        ut3_to_heisenberg(((1, 2, 3), (0, 2, 1), (0, 0, 1)))


@given(heis, heis)
def test_ut3_multiplicative(x, y):
    lhs = heisenberg_to_ut3(H.multiply(x, y))
    assert [list(r) for r in lhs] == oracles.matprod(oracles.ut3(*x), oracles.ut3(*y))
    assert matmul3(heisenberg_to_ut3(x), heisenberg_to_ut3(y)) == lhs


def test_element_order_examples():
    assert H.element_order(H.identity()) == 1
    assert H.element_order(H.a, 1000) is None
    assert WZ.element_order(WZ.shift_generator(3)) == 2
    with pytest.raises(ValueError):
        H.element_order(H.a, 0)


def test_metabelian_witness():
    for g in (H, Z3, C6):
        assert g.metabelian_witness(WordSampler(g, seed=1), 1000) is None
    # [[x, y], z] = 1 fails on T(2, F_7): a unipotent commutator does not commute with D
    x, y, z = F7.metabelian_witness(WordSampler(F7, seed=1), 1000)
    assert F7.commutator(F7.commutator(x, y), z) != F7.identity()
    with pytest.raises(ValueError):
        H.metabelian_witness(WordSampler(H), 0)


def test_derived_abelian_witness():
    for g in (H, F7, WZ, WP):
        assert g.derived_abelian_witness(WordSampler(g, seed=4), 300) is None


def test_t2_fp_commutators_exhaustive():
    elems = list(F7.elements())
    comms = {F7._mul(F7._mul(F7._inv(x), F7._inv(y)), F7._mul(x, y)) for x in elems for y in elems}
    assert comms == {x for x in elems if F7.membership(x).in_unipotent}
    for s in comms:
        for t in comms:
            assert F7.commutator(s, t) == F7.identity()


# -- fields and T(2, K) --------------------------------------------------------


def test_fields():
    assert is_prime(7) and not is_prime(9) and not is_prime(1)
    assert valuation(48, 2) == 4 and valuation(7, 2) == 0
    with pytest.raises(CharacteristicTwoError, match="characteristic two not supported"):
        PrimeField(2)
    with pytest.raises(ValueError):
        PrimeField(9)
    f = PrimeField(7)
    assert f.inv(3) == 5 and f(-1) == 6
    assert sorted(pow(f.primitive_root(), k, 7) for k in range(6)) == list(range(1, 7))
    q = RationalField()
    assert q.inv(Fraction(-2, 3)) == Fraction(-3, 2)


def test_t2_order_is_exhaustive():
    elems = list(F7.elements())
    assert len(elems) == len(set(elems)) == F7.order == oracles.t2_order(7) == 252


def test_t2_examples():
    e = Q.diagonal(-1, 1)
    u = Q.unipotent(Fraction(5, 3))
    assert Q.multiply(Q.multiply(e, u), e) == Q.unipotent(Fraction(-5, 3))
    assert Q.conjugate(u, e) == Q.unipotent(Fraction(-5, 3))
    assert Q.membership(Q.element(1, 5, 1)) == SubgroupFlags(True, False, False)
    assert Q.membership(Q.element(-1, 0, 1)) == SubgroupFlags(False, True, True)
    assert Q.membership(Q.element(2, 3, 5)) == SubgroupFlags(False, False, False)
    assert Q.tau(Q.element(2, 7, 3)) == Q.element(2, 0, 3)
    assert len(Q.sign_diagonal_elements()) == 4


@given(t2f, t2f)
def test_t2_fp_product_matches_matrices(x, y):
    assert F7.multiply(x, y) == oracles.t2_product_mod(x, y, 7)


@given(t2q, t2q)
def test_t2_q_product_and_tau(x, y):
    assert Q.multiply(x, y) == oracles.t2_product_q(x, y)
    assert Q.tau(Q.multiply(x, y)) == Q.multiply(Q.tau(x), Q.tau(y))
    d, u = Q.factor(x)
    assert Q.membership(u).in_unipotent and Q.multiply(d, u) == x


def test_t2_fp_random_inverse_and_tau():
    rng = random.Random(5)
    elems = list(F7.elements())
    for _ in range(1000):
        x, y = rng.choice(elems), rng.choice(elems)
        assert F7.multiply(x, F7.inverse(x)) == F7.identity()
        assert F7.tau(F7.multiply(x, y)) == F7.multiply(F7.tau(x), F7.tau(y))


def test_t2_unipotent_normal_and_signs_involutive():
    elems = list(F7.elements())
    unip = [x for x in elems if F7.membership(x).in_unipotent]
    assert len(unip) == 7
    for g in elems:
        for v in unip:
            assert F7.membership(F7.conjugate(v, g)).in_unipotent
    for e in F7.sign_diagonal_elements():
        assert F7.element_order(e) in (1, 2)


def test_t2_q_character_uses_valuations():
    chi = Q.character([1, 0, 0, 0, 0, 1, 0, 0])
    assert chi(Q.element(Fraction(8, 5), 3, Fraction(-1, 9))) == 3 - 2
    assert chi(Q.element(-1, 7, 1)) == 0
    with pytest.raises(ValueError):
        Q.character([1.0])


# -- wreath products -------------------------------------------------------------


def test_wreath_examples():
    a = (1,)
    b1 = WZ.shift_generator(1)
    assert WZ.multiply(b1, b1) == WZ.identity()
    x = WZ.element(0, {0: a})
    assert WZ.multiply(x, b1) == WZ.element(1, {0: a})
    assert WZ.multiply(b1, x) == WZ.element(1, {1: a})
    assert WZ.element(0, {0: (0,)}) == WZ.identity()


def test_wreath_action_is_conjugation():
    s = WordSampler(WZ, seed=11)
    for x in s.elements(200):
        d = WZ.element(0, dict(x.values))
        for i in range(1, 5):
            b = WZ.shift_generator(i)
            assert WZ.multiply(WZ.multiply(b, d), b) == WZ.element(0, dict(WZ.act(d.values, b.shift)))


def test_wreath_associativity_random_triples():
    s = WordSampler(WZ, seed=2)
    for _ in range(1000):
        x, y, z = s.element(), s.element(), s.element()
        assert WZ._mul(WZ._mul(x, y), z) == WZ._mul(x, WZ._mul(y, z))


def test_wreath_rejects_out_of_range():
    with pytest.raises(ValueError):
        WZ.element(16, {})
    with pytest.raises(ValueError):
        WZ.element(0, {16: (1,)})
    with pytest.raises(ValueError):
        WZ.shift_generator(5)


def test_commuting_blocks():
    assert WZ.commuting_block_check([(1, (2,)), (2, (3,)), (7, (-4,))])
    assert WZ.commuting_block_check([(1, (2,))])
    with pytest.raises(ValueError):
        WZ.commuting_block_check([(1, (2,)), (1, (3,))])


def test_wreath_commutators_lie_in_base_part():
    s = WordSampler(WP, seed=8)
    for x, y in s.pairs(300):
        assert WP.commutator(x, y).shift == 0


def test_wreath_character_sums_base_values():
    chi = WZ.character([2.0])
    x = WZ.element(5, {0: (3,), 7: (-1,)})
    assert chi(x) == 4.0
    assert chi(WZ.multiply(x, WZ.shift_generator(2))) == chi(x)


# -- descriptors ---------------------------------------------------------------


@pytest.mark.parametrize(
    "text,kind",
    [
        ("heisenberg", Heisenberg),
        ("z", FreeAbelian),
        ("z^d:3", FreeAbelian),
        ("zn:5", Cyclic),
        ("t2:q", Triangular2),
        ("t2:fp:7", Triangular2),
        ("wreath:z:8", Wreath),
        ("wreath:z*zn:3:8", Wreath),
        ("z*zn:2", DirectProduct),
    ],
)
def test_parse_group(text, kind):
    g = parse_group(text)
    assert isinstance(g, kind)
    assert g.descriptor == text or text == "z"


def test_parse_wreath_base():
    w = parse_group("wreath:z*zn:3:8")
    assert w.factors == 8 and w.base.descriptor == "z*zn:3"


@pytest.mark.parametrize("text", ["", "bogus", "z^d:0", "zn:x", "t2:fp:9", "wreath:z", "wreath:z:0", "t2:r"])
def test_parse_rejects(text):
    with pytest.raises(DescriptorError):
        parse_group(text)


def test_parse_characteristic_two():
    with pytest.raises(CharacteristicTwoError, match="characteristic two not supported"):
        parse_group("t2:fp:2")
