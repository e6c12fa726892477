import cmath

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hopsym.polyring import IntPoly, RootFindingError, add, compose, evaluate, mul, parity, roots_shifted

L = IntPoly.x()
polys = st.lists(st.integers(-6, 6), max_size=6).map(IntPoly)


def P(*c):
    return IntPoly(c)


def close_sets(got, want, tol=1e-9):
    got = sorted(got, key=lambda z: (round(z.real, 6), round(z.imag, 6)))
    want = sorted(want, key=lambda z: (round(z.real, 6), round(z.imag, 6)))
    return len(got) == len(want) and all(abs(a - b) < tol for a, b in zip(got, want))


def test_canonical_form():
    assert P(1, 2, 0, 0) == P(1, 2)
    assert P(0, 0).degree == -1
    assert P().is_zero
    assert (L**3).coeffs == (0, 0, 0, 1)


def test_parse_and_format():
    p = IntPoly.parse("0,1,0,-3,0,1")
    assert p == L**5 - 3 * L**3 + L
    assert p.to_csv() == "0,1,0,-3,0,1"
    assert p.pretty() == "λ^5 - 3λ^3 + λ"
    with pytest.raises(ValueError, match="x"):
        IntPoly.parse("1,x")


@pytest.mark.parametrize(
    "a,b,want",
    [(L**2, -(L**2), P()), (L**3 - L, L, L**3), (L**2, P(1), L**2 + 1)],
)
def test_add_examples(a, b, want):
    assert add(a, b) == want


@pytest.mark.parametrize(
    "a,b,want",
    [(L - 1, L + 1, L**2 - 1), (L**2, P(), P()), (L**3 - L, L, L**4 - L**2)],
)
def test_mul_examples(a, b, want):
    assert mul(a, b) == want


def test_compose_examples():
    assert compose(L**2 - 2, L**2) == L**4 - 2
    p = L**5 - 3 * L**3 + L
    assert compose(L, p) == p
    assert compose(L**3 - L, L**2) == L**6 - L**2


def test_eval_examples():
    assert evaluate(L**3 - L, 2) == 6
    assert evaluate(L**2, 1 + 1j) == 2j
    assert evaluate(L**5 - 3 * L**3 + L, 1) == -1


def test_parity_examples():
    assert parity(L**4 + 2 * L**2) == "even"
    assert parity(L**3 + L) == "odd"
    assert parity(L**2 + L) == "neither"


def test_roots_examples():
    assert close_sets(roots_shifted(L**2, 4), [2, -2])
    assert close_sets(roots_shifted(L**2, 2j), [1 + 1j, -1 - 1j])
    assert close_sets(roots_shifted(L**3 - L, 0), [0, 1, -1])


def test_roots_of_constant_rejected():
    with pytest.raises((ValueError, RootFindingError)):
        roots_shifted(P(3), 0)


@given(polys, polys, polys)
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == P()


@settings(max_examples=60)
@given(polys, polys, polys)
def test_compose_associative(a, b, c):
    assert compose(compose(a, b), c) == compose(a, compose(b, c))


@given(polys, polys, st.complex_numbers(max_magnitude=1.5, allow_nan=False, allow_infinity=False))
def test_eval_of_compose(a, b, z):
    lhs = evaluate(compose(a, b), z)
    rhs = evaluate(a, evaluate(b, z))
    assert abs(lhs - rhs) <= 1e-9 * max(1.0, abs(lhs))


@settings(max_examples=60, deadline=None)
@given(
    st.lists(st.integers(-4, 4), min_size=1, max_size=8),
    st.complex_numbers(max_magnitude=3, allow_nan=False, allow_infinity=False),
)
def test_roots_reexpand(body, w):
    p = IntPoly(body + [1])
    roots = roots_shifted(p, w)
    assert len(roots) == p.degree
    # rebuild the monic polynomial from its roots
    rebuilt = np.poly(np.array(roots))[::-1]
    want = np.array(p.coeffs, dtype=complex)
    want[0] -= w
    assert np.max(np.abs(rebuilt - want)) <= 1e-6 * max(1.0, np.max(np.abs(want)))


def test_roots_satisfy_equation():
    p = L**7 - 5 * L**5 + 6 * L**3 - L
    for z in roots_shifted(p, cmath.exp(0.3j)):
        assert abs(evaluate(p, z) - cmath.exp(0.3j)) < 1e-10 * 7
