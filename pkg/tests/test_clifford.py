import random
from fractions import Fraction

import numpy as np
import pytest

from hasse_witt.clifford import (
    CliffordElement,
    PinElement,
    UnsupportedSplittingField,
    cartan_dieudonne,
    cl_mul,
    extend_isometry,
    lift_isometry,
    lift_reflection,
    norm_N,
    pin_one,
    psi_conjugation,
    r_q_apply,
    r_q_matrix,
    reflection_matrix,
)
from hasse_witt.linalg import mat_mul
from hasse_witt.multiquad import RATIONALS, MultiQuadField, embed

from oracles import clifford_matrix

SWAP = ((0, 1), (1, 0))


def rand_elt(form, rng, field=RATIONALS):
    n = len(form)
    coeffs = {s: Fraction(rng.randint(-3, 3), rng.randint(1, 3)) for s in range(1 << n) if rng.random() < 0.6}
    return CliffordElement(form, field, coeffs)


def blade(form, *idx):
    out = CliffordElement.scalar(form, RATIONALS)
    for i in idx:
        out = out * CliffordElement.basis(form, RATIONALS, i)
    return out


def as_rational_matrix(m):
    return tuple(tuple(x.rational() for x in row) for row in m)


def test_defining_relations():
    form = (3, 5)
    e1, e2 = blade(form, 0), blade(form, 1)
    assert e1 * e2 == -(e2 * e1)
    assert e1 * e1 == CliffordElement.scalar(form, RATIONALS, 3)
    assert (e1 * e2) * (e1 * e2) == CliffordElement.scalar(form, RATIONALS, -15)


def test_norm_examples():
    form = (3, 5)
    assert norm_N(blade(form, 0)) == 3
    assert norm_N(blade(form, 0, 1)) == 15
    L = MultiQuadField((2,))
    v = CliffordElement.vector((1, 1), L, [1, -1]) * (1 / L.root(0))
    assert norm_N(v) == L.one()


def test_norm_rejects_non_group_elements():
    form = (1, 1, 1)
    x = CliffordElement.scalar(form, RATIONALS) + blade(form, 0)
    with pytest.raises(ValueError):
        norm_N(x)


def test_matrix_model_agrees():
    rng = random.Random(0)
    for form in [(1,), (3, 5), (-1, 2, 3), (1, -2, 5, -3), (2, 1, -1, 3, 5)]:
        for _ in range(10):
            x, y = rand_elt(form, rng), rand_elt(form, rng)
            lhs = clifford_matrix(cl_mul(x, y))
            rhs = clifford_matrix(x) @ clifford_matrix(y)
            assert np.allclose(lhs, rhs, atol=1e-8)


def test_associativity_200_triples():
    rng = random.Random(1)
    forms = [(1, 1), (3, -5), (1, -1, 2), (2, 3, -1, 5)]
    for t in range(200):
        form = forms[t % len(forms)]
        x, y, z = (rand_elt(form, rng) for _ in range(3))
        assert (x * y) * z == x * (y * z)


def test_reflection_lift_of_square_vector():
    form = (4, 1)
    s, L = lift_reflection(form, (1, 0))
    assert L == RATIONALS
    assert r_q_apply(s, (1, 0)) == (L(-1), L(0))
    assert r_q_apply(s, (0, 1)) == (L(0), L(1))


def test_identity_acts_trivially():
    one = pin_one((2, 3))
    assert r_q_apply(one, (5, 7)) == (RATIONALS(5), RATIONALS(7))


def test_lift_reflection_examples():
    s, L = lift_reflection((1, 1, 1), (1, 0, 0))
    assert L == RATIONALS and s.elt == blade((1, 1, 1), 0)
    s, L = lift_reflection((1, 1), (1, -1))
    assert L.radicands == (2,)
    assert s.elt == CliffordElement.vector((1, 1), L, [1, -1]) * (1 / L.root(0))
    s, L = lift_reflection((3, 1), (1, 0))
    assert L.radicands == (3,)
    assert norm_N(s.elt) == L.one()


def test_swap_lift():
    s, L = lift_isometry((1, 1), SWAP)
    assert L.radicands == (2,)
    assert s.parity == -1
    assert as_rational_matrix(r_q_matrix(s)) == tuple(tuple(Fraction(x) for x in row) for row in SWAP)
    target = CliffordElement.vector((1, 1), L, [1, -1]) * (1 / L.root(0))
    assert s.elt in (target, -target)


def test_minus_identity_lift():
    s, L = lift_isometry((1, 1), ((-1, 0), (0, -1)))
    assert L == RATIONALS and s.parity == 1
    e12 = blade((1, 1), 0, 1)
    assert s.elt in (e12, -e12)
    s, _ = lift_isometry((1, 1), ((1, 0), (0, 1)))
    assert s == pin_one((1, 1)) or -s == pin_one((1, 1))


def test_irrational_norm_is_unsupported():
    L = MultiQuadField((2,))
    with pytest.raises(UnsupportedSplittingField):
        lift_reflection((1, 1), (L.root(0) + 1, L(0)), L)


def random_isometry(form, rng, count):
    """Product of reflections in random rational vectors, as a rational matrix."""
    n = len(form)
    m = tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n))
    vs = []
    while len(vs) < count:
        v = tuple(Fraction(rng.randint(-2, 2)) for _ in range(n))
        if sum(a * x * x for a, x in zip(form, v)) != 0:
            vs.append(v)
            m = mat_mul(m, reflection_matrix(form, v))
    return m


def test_lift_isometry_roundtrip_and_parity():
    rng = random.Random(4)
    for form in [(1, 1, 1), (1, 2, -3), (1, 1, 2, 5)]:
        for count in (1, 2, 3):
            m = random_isometry(form, rng, count)
            s, L = lift_isometry(form, m)
            assert as_rational_matrix(r_q_matrix(s)) == m
            assert s.parity == (-1) ** count
            assert len(cartan_dieudonne(form, m)) <= 2 * len(form)


def _common_lifts(form, mats):
    """Lift several isometries over one field."""
    L = RATIONALS
    for m in mats:
        _, L = lift_isometry(form, m, L)
    lifts = []
    for m in mats:
        s, L2 = lift_isometry(form, m, L)
        assert L2 == L
        lifts.append(s)
    return lifts, L


def test_r_q_is_a_homomorphism_with_kernel_pm1():
    rng = random.Random(9)
    form = (1, 1, 2)
    for _ in range(6):
        m1, m2 = random_isometry(form, rng, 2), random_isometry(form, rng, 1)
        (s1, s2, s12), L = _common_lifts(form, [m1, m2, mat_mul(m1, m2)])
        prod = r_q_matrix(s1 * s2)
        assert as_rational_matrix(prod) == mat_mul(m1, m2)
        assert s12 == s1 * s2 or s12 == -(s1 * s2)
    minus = -pin_one(form)
    assert as_rational_matrix(r_q_matrix(minus)) == as_rational_matrix(r_q_matrix(pin_one(form)))


def test_pin_element_validation():
    form = (2, 3)
    with pytest.raises(ValueError):
        PinElement(blade(form, 0), -1)
    with pytest.raises(ValueError):
        PinElement(CliffordElement.scalar(form, RATIONALS) + blade(form, 0), 1)


def test_psi_composition_and_extension():
    rng = random.Random(12)
    form = (1, 1, 2)
    for _ in range(4):
        m1, m2 = random_isometry(form, rng, rng.randint(1, 3)), random_isometry(form, rng, rng.randint(1, 3))
        (s1, s2), L = _common_lifts(form, [m1, m2])
        p1, p2, p12 = psi_conjugation(s1), psi_conjugation(s2), psi_conjugation(s1 * s2)
        ext = extend_isometry(form, m1, L)
        for _ in range(5):
            x = rand_elt(form, rng, L)
            assert p1(p2(x)) == p12(x)
            assert p1(x) == ext(x)


def test_psi_preserves_products():
    rng = random.Random(2)
    form = (1, -1, 3)
    m = random_isometry(form, rng, 3)
    (s,), L = _common_lifts(form, [m])
    psi = psi_conjugation(s)
    for _ in range(10):
        x, y = rand_elt(form, rng, L), rand_elt(form, rng, L)
        assert psi(x * y) == psi(x) * psi(y)


def test_galois_commutes_with_product():
    L = MultiQuadField((2, 3))
    form = (1, 1)
    x = CliffordElement(form, L, {1: L.root(0), 3: L.root(1) + 1})
    y = CliffordElement(form, L, {2: L.root(0) * L.root(1), 0: 2})
    for g in L.galois_group():
        assert (x * y).galois(g) == x.galois(g) * y.galois(g)


def test_embed_pin_element():
    s, L = lift_isometry((1, 1), SWAP)
    big = MultiQuadField((2, 5))
    t = s.embed(big)
    assert t.field == big
    assert t.elt.coeffs == {k: embed(c, big) for k, c in s.elt.coeffs.items()}
