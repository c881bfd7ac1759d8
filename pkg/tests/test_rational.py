"""Exact linear algebra and feasibility primitives."""

from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from toricstacks.rational import (
    feasible,
    frac,
    inv,
    nullspace,
    qmat,
    qvec,
    rank,
    rref,
    solve,
    solve_matrix,
)


def test_frac_parses_strings_ints_fractions():
    assert frac("3/4") == Fraction(3, 4)
    assert frac("-2") == Fraction(-2)
    assert frac(5) == Fraction(5)
    assert frac(Fraction(1, 3)) == Fraction(1, 3)
    with pytest.raises(TypeError):
        frac(0.5)


def test_rref_and_rank():
    A = qmat([[1, 2, 3], [2, 4, 6], [1, 0, 1]])
    R, pivots = rref(A)
    assert pivots == [0, 1]
    assert rank(A) == 2
    assert rank(qmat([[0, 0], [0, 0]])) == 0


def test_solve_exact_and_inconsistent():
    A = qmat([[2, 1], [1, -1]])
    b = qvec([5, 1])
    x = solve(A, b)
    assert list(A @ x) == list(b)
    assert x[0] == Fraction(2) and x[1] == Fraction(1)
    assert solve(qmat([[1, 1], [1, 1]]), qvec([0, 1])) is None


def test_solve_matrix_and_inverse_roundtrip():
    A = qmat([[2, 1], [1, 1]])
    X = solve_matrix(A, qmat([[1, 0], [0, 1]]))
    assert np.array_equal(A @ X, qmat([[1, 0], [0, 1]]))
    Ainv = inv(A)
    assert np.array_equal(A @ Ainv, qmat([[1, 0], [0, 1]]))
    with pytest.raises(ValueError):
        inv(qmat([[1, 2], [2, 4]]))


def test_nullspace_annihilates():
    A = qmat([[1, -1, 0], [0, 1, -1]])
    basis = nullspace(A)
    assert len(basis) == 1
    assert all(v == 0 for v in A @ basis[0])


def test_feasible_basic_strict_vs_weak():
    # x > 0 and x < 0: infeasible; weak versions meet at 0
    assert not feasible([], [([1], 0, True), ([-1], 0, True)], 1)
    assert feasible([], [([1], 0, False), ([-1], 0, False)], 1)


def test_feasible_with_equalities():
    # x + y = 1, x > 0, y > 0 is feasible; adding x > 1 kills it
    eqs = [([1, 1], -1)]
    assert feasible(eqs, [([1, 0], 0, True), ([0, 1], 0, True)], 2)
    assert not feasible(
        eqs, [([1, 0], 0, True), ([0, 1], 0, True), ([1, 0], -1, True)], 2
    )


def test_feasible_inconsistent_equalities():
    assert not feasible([([1, 1], 0), ([1, 1], -1)], [], 2)


def test_feasible_rational_coefficients():
    # x >= 1/3 and x <= 1/3 with strict upper bound: infeasible
    assert not feasible(
        [], [([Fraction(1)], Fraction(-1, 3), False),
             ([-1], Fraction(1, 3), True)], 1
    )
    assert feasible(
        [], [([Fraction(1)], Fraction(-1, 3), False),
             ([-1], Fraction(1, 3), False)], 1
    )


def test_feasible_zero_variables():
    assert feasible([], [([], 1, False)], 0)
    assert not feasible([], [([], 0, True)], 0)


@st.composite
def _point_and_ineqs(draw):
    """A random rational point plus inequalities satisfied by it."""
    n = draw(st.integers(1, 3))
    pt = [Fraction(draw(st.integers(-5, 5)), draw(st.integers(1, 4)))
          for _ in range(n)]
    rows = []
    for _ in range(draw(st.integers(1, 6))):
        coeffs = [Fraction(draw(st.integers(-4, 4))) for _ in range(n)]
        slack = Fraction(draw(st.integers(0, 5)))
        const = slack - sum(c * p for c, p in zip(coeffs, pt))
        rows.append((coeffs, const, slack > 0 and draw(st.booleans())))
    return n, rows


@settings(max_examples=60, deadline=None)
@given(_point_and_ineqs())
def test_feasible_never_rejects_a_witnessed_system(case):
    n, rows = case
    assert feasible([], rows, n)
