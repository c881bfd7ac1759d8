"""Exact linear algebra and feasibility over the rationals.

Matrices are numpy arrays with ``dtype=object`` whose entries are
:class:`fractions.Fraction` (plain ints are accepted and coerced).
Feasibility of systems of equalities and (possibly strict) inequalities
is decided by Fourier-Motzkin elimination, which is exact and, at the
desk scale this package targets, fast enough.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

import numpy as np

__all__ = [
    "frac",
    "qmat",
    "qvec",
    "rref",
    "rank",
    "solve",
    "solve_matrix",
    "nullspace",
    "inv",
    "feasible",
]


def frac(x) -> Fraction:
    """Coerce ints, Fractions, and 'p/q' strings to Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, np.integer)):
        return Fraction(int(x))
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


def qmat(rows) -> np.ndarray:
    """Build a 2-d object array of Fractions."""
    rows = [[frac(x) for x in row] for row in rows]
    if not rows:
        return np.empty((0, 0), dtype=object)
    ncols = len(rows[0])
    if any(len(r) != ncols for r in rows):
        raise ValueError("ragged matrix")
    out = np.empty((len(rows), ncols), dtype=object)
    for i, r in enumerate(rows):
        out[i, :] = r
    return out


def qvec(entries) -> np.ndarray:
    out = np.empty(len(entries), dtype=object)
    for i, x in enumerate(entries):
        out[i] = frac(x)
    return out


def rref(A: np.ndarray):
    """Reduced row echelon form; returns (R, pivot_columns)."""
    R = np.array(A, dtype=object)
    m, n = R.shape
    pivots = []
    r = 0
    for c in range(n):
        if r == m:
            break
        piv = next((i for i in range(r, m) if R[i, c] != 0), None)
        if piv is None:
            continue
        if piv != r:
            R[[r, piv]] = R[[piv, r]]
        R[r] = R[r] / R[r, c]
        for i in range(m):
            if i != r and R[i, c] != 0:
                R[i] = R[i] - R[i, c] * R[r]
        pivots.append(c)
        r += 1
    return R, pivots


def rank(A: np.ndarray) -> int:
    if A.size == 0:
        return 0
    return len(rref(A)[1])


def solve(A: np.ndarray, b: np.ndarray):
    """One exact solution of A x = b (free variables set to 0), or None."""
    m, n = A.shape
    aug = np.empty((m, n + 1), dtype=object)
    aug[:, :n] = A
    aug[:, n] = b
    R, pivots = rref(aug)
    if n in pivots:
        return None
    x = np.array([Fraction(0)] * n, dtype=object)
    for i, c in enumerate(pivots):
        x[c] = R[i, n]
    return x


def solve_matrix(A: np.ndarray, B: np.ndarray):
    """Exact solution X of A X = B, or None if any column is inconsistent."""
    cols = []
    for j in range(B.shape[1]):
        x = solve(A, B[:, j])
        if x is None:
            return None
        cols.append(x)
    X = np.empty((A.shape[1], B.shape[1]), dtype=object)
    for j, x in enumerate(cols):
        X[:, j] = x
    return X


def nullspace(A: np.ndarray):
    """Basis (list of object vectors) of the rational kernel of A."""
    m, n = A.shape
    R, pivots = rref(A)
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        v = np.array([Fraction(0)] * n, dtype=object)
        v[f] = Fraction(1)
        for i, c in enumerate(pivots):
            v[c] = -R[i, f]
        basis.append(v)
    return basis


def inv(A: np.ndarray) -> np.ndarray:
    m, n = A.shape
    if m != n:
        raise ValueError("inverse of a non-square matrix")
    ident = qmat([[Fraction(int(i == j)) for j in range(n)] for i in range(n)])
    X = solve_matrix(A, ident)
    if X is None or rank(A) < n:
        raise ValueError("matrix is singular")
    return X


# ---------------------------------------------------------------------------
# Feasibility of linear systems with strict inequalities
# ---------------------------------------------------------------------------

def _normalize(coeffs, const, strict):
    """Scale a row to a primitive integer vector for dedup and early exit."""
    dens = [c.denominator for c in coeffs] + [const.denominator]
    scale = 1
    for d in dens:
        scale = scale * d // gcd(scale, d)
    ints = [int(c * scale) for c in coeffs] + [int(const * scale)]
    g = 0
    for v in ints:
        g = gcd(g, abs(v))
    if g > 1:
        ints = [v // g for v in ints]
    return tuple(ints[:-1]), ints[-1], strict


def _fm_feasible(rows, nvars) -> bool:
    """Decide whether {c·x + d >= 0 (or > 0)} has a rational solution.

    rows: iterable of (coeff_tuple, const, strict). Strict sets are open,
    so real feasibility and rational feasibility coincide.
    """
    work = set()
    for coeffs, const, strict in rows:
        coeffs, const, strict = _normalize(
            [frac(c) for c in coeffs], frac(const), strict
        )
        if all(c == 0 for c in coeffs):
            if const < 0 or (const == 0 and strict):
                return False
            continue
        work.add((coeffs, const, strict))

    for v in range(nvars - 1, -1, -1):
        lowers, uppers, rest = [], [], []
        for coeffs, const, strict in work:
            cv = coeffs[v]
            if cv > 0:
                lowers.append((coeffs, const, strict))
            elif cv < 0:
                uppers.append((coeffs, const, strict))
            else:
                rest.append((coeffs[:v], const, strict))
        nxt = set(rest)
        for lc, ld, ls in lowers:
            for uc, ud, us in uppers:
                a, b = lc[v], -uc[v]  # both positive
                coeffs = tuple(b * lc[j] + a * uc[j] for j in range(v))
                const = b * ld + a * ud
                coeffs, const, strict = _normalize(
                    [Fraction(c) for c in coeffs], Fraction(const), ls or us
                )
                if all(c == 0 for c in coeffs):
                    if const < 0 or (const == 0 and strict):
                        return False
                    continue
                nxt.add((coeffs, const, strict))
        work = nxt
    return True


def feasible(equalities, inequalities, nvars) -> bool:
    """Exact feasibility of a mixed linear system over the rationals.

    equalities:   list of (coeffs, const) meaning coeffs·x + const = 0
    inequalities: list of (coeffs, const, strict) meaning coeffs·x + const >= 0,
                  or > 0 when strict is True
    """
    ineqs = [
        ([frac(c) for c in coeffs], frac(const), strict)
        for coeffs, const, strict in inequalities
    ]
    if equalities:
        A = qmat([[frac(c) for c in coeffs] for coeffs, _ in equalities])
        b = qvec([-frac(const) for _, const in equalities])
        part = solve(A, b)
        if part is None:
            return False
        basis = nullspace(A)
        reduced = []
        for coeffs, const, strict in ineqs:
            cvec = qvec(coeffs)
            newc = [sum(cvec[i] * n[i] for i in range(nvars)) for n in basis]
            newd = sum(cvec[i] * part[i] for i in range(nvars)) + const
            reduced.append((newc, newd, strict))
        return _fm_feasible(reduced, len(basis))
    return _fm_feasible(ineqs, nvars)
