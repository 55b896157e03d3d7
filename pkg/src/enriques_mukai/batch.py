"""Vectorised counterparts of the scalar lattice operations.

A batch is an int64 array of shape ``(n, 13)`` with columns
``r, c_1..c_10, s, kappa``.  Every operation first checks that its inputs are
small enough for int64 arithmetic to be exact and raises
:class:`IntegerOverflowError` otherwise; the scalar functions remain the
reference and the tests cross-check the two.
"""

from __future__ import annotations

import itertools

import numpy as np

from .errors import IntegerOverflowError
from .lattice import GRAM

R, S, K = 0, 11, 12
C = slice(1, 11)
WIDTH = 13

G = np.array(GRAM, dtype=np.int64)
GF = G.astype(np.float64)
# |entries| below this keep every quadratic expression far inside int64.
LIMIT = 1 << 28
# Below this, products and their sums stay under 2**53, so float64 BLAS is exact.
FLOAT_EXACT = 1 << 20


def _guard(*arrays):
    for a in arrays:
        if a.size and max(int(a.max()), -int(a.min())) >= LIMIT:
            raise IntegerOverflowError(f"batch entries reach {int(np.abs(a).max())}, limit is {LIMIT}")


def box(r_values, s_max, coeff_bound, kappas=(0, 1)):
    """All parity-valid rows with the given ranks, ``|s| <= s_max`` and
    coefficients in ``[-coeff_bound, coeff_bound]``.

    Order: r, then s, then c1 lexicographically, then kappa.
    """
    vals = np.arange(-coeff_bound, coeff_bound + 1, dtype=np.int64)
    cgrid = np.stack([g.ravel() for g in np.meshgrid(*([vals] * 10), indexing="ij")], axis=1)
    blocks = []
    for r in r_values:
        for s in range(-s_max, s_max + 1):
            if (r - s) % 2:
                continue
            n = len(cgrid)
            blk = np.empty((n * len(kappas), WIDTH), dtype=np.int64)
            blk[:, R] = r
            blk[:, S] = s
            blk[:, C] = np.repeat(cgrid, len(kappas), axis=0)
            blk[:, K] = np.tile(np.array(kappas, dtype=np.int64), n)
            blocks.append(blk)
    if not blocks:
        return np.empty((0, WIDTH), dtype=np.int64)
    return np.concatenate(blocks)


def _peak(*arrays):
    return max((max(int(a.max()), -int(a.min())) for a in arrays if a.size), default=0)


def _form(a, b):
    """Row-wise (a_i, b_i) under the NS Gram, exact."""
    if _peak(a, b) < FLOAT_EXACT:
        af = a.astype(np.float64)
        return ((af @ GF) * b).sum(axis=1).astype(np.int64)
    return ((a @ G) * b).sum(axis=1)


def square(X):
    _guard(X)
    c = X[:, C]
    return _form(c, c) + X[:, R] * X[:, S]


def pairing(X, Y):
    _guard(X, Y)
    return _form(X[:, C], Y[:, C]) + (X[:, R] * Y[:, S] + Y[:, R] * X[:, S]) // 2


def content(X):
    return np.gcd.reduce(np.abs(X[:, :K]), axis=1)


def primitive(X):
    cols = np.concatenate([X[:, :S], ((X[:, R] - X[:, S]) // 2)[:, None]], axis=1)
    return np.gcd.reduce(np.abs(cols), axis=1) == 1


def twist(X, D, kd=0):
    """Twist every row by D (shape ``(10,)`` or ``(n, 10)``)."""
    D = np.asarray(D, dtype=np.int64)
    kd = np.asarray(kd, dtype=np.int64)
    _guard(X, D)
    r = X[:, R]
    c = X[:, C]
    if D.ndim == 1:
        GD = G @ D
        cD = c @ GD
        DD = int(D @ GD)
    else:
        cD = _form(c, D)
        DD = _form(D, D)
    Y = X.copy()
    Y[:, C] = c + r[:, None] * D
    Y[:, S] = X[:, S] - 2 * cD - r * DD
    Y[:, K] = (X[:, K] + r * kd) % 2
    return Y


def reflect_mask(X):
    c = X[:, C]
    c2 = _form(c, c)
    return (X[:, R] > 0) & (X[:, S] > 0) & (c2 < 0)


def reflect(X, mask=None):
    """Reflect the rows where the move applies; others pass through.

    Returns ``(Y, mask)``.
    """
    _guard(X)
    if mask is None:
        mask = reflect_mask(X)
    elif not np.all(reflect_mask(X)[mask]):
        raise ValueError("reflect requested on rows outside its domain")
    Y = X.copy()
    Xm = X[mask]
    Y[mask, R] = Xm[:, S]
    Y[mask, S] = Xm[:, R]
    Y[mask, C] = -Xm[:, C]
    Y[mask, K] = (Xm[:, K] + (Xm[:, S] - Xm[:, R]) // 2) % 2
    return Y, mask


def hyp_change(X, eta):
    eta = np.asarray(eta, dtype=np.int64)
    _guard(X, eta)
    G8 = G[2:, 2:]
    d1 = X[:, 1]
    xi = X[:, 3:11]
    half = int(eta @ G8 @ eta) // 2
    Y = X.copy()
    Y[:, 2] = X[:, 2] - d1 * half - xi @ (G8 @ eta)
    Y[:, 3:11] = xi + d1[:, None] * eta
    return Y


def _common(X, c2):
    r, s, k = X[:, R], X[:, S], X[:, K]
    c = X[:, C]
    sq = c2 + r * s
    ell = content(X)
    even = np.all(c % 2 == 0, axis=1)
    case3 = (ell == 2) & (sq == 0) & even & ((k - r // 2) % 2 == 0)
    return ((ell == 1) & (sq >= -1)) | ((ell == 2) & (sq >= 2)) | case3, sq


def unnodal_nonempty(X, ample=(1, 1, 0, 0, 0, 0, 0, 0, 0, 0)):
    """Vectorised verdict of the unnodal criterion (False for non-primitive rows)."""
    _guard(X)
    c = X[:, C]
    c2 = _form(c, c)
    ch = c @ (G @ np.asarray(ample, dtype=np.int64))
    effective = (X[:, R] > 0) | ((c2 >= 0) & (ch > 0))
    ok, _ = _common(X, c2)
    return primitive(X) & effective & ok


def nodal_nonempty(X, cycles, ample=(1, 1, 0, 0, 0, 0, 0, 0, 0, 0)):
    """Vectorised nodal criterion.  ``cycles`` is a sequence of NSClass; rows
    with ``<v^2> = -2`` and no cycles come out False (undecided)."""
    _guard(X)
    r, k = X[:, R], X[:, K]
    c = X[:, C]
    c2 = _form(c, c)
    ch = c @ (G @ np.asarray(ample, dtype=np.int64))
    ok, sq = _common(X, c2)
    hit = np.zeros(len(X), dtype=bool)
    parity = c % 2
    for d in cycles:
        same = np.all(parity == np.array(d.free, dtype=np.int64) % 2, axis=1)
        hit |= same & ((k - d.kappa - r // 2) % 2 == 0)
    ok |= (sq == -2) & hit
    return primitive(X) & ((r > 0) | (ch > 0)) & ok


def rows_to_raw(X):
    """Convert rows to scalar ``(r, c, s, kappa)`` tuples of Python ints."""
    for row in X.tolist():
        yield row[0], tuple(row[1:11]), row[11], row[12]


def iter_product_rows(r_values, s_max, coeff_bound):
    """Python-int generator over the same box as :func:`box` with kappa 0 only."""
    vals = range(-coeff_bound, coeff_bound + 1)
    for r in r_values:
        for s in range(-s_max, s_max + 1):
            if (r - s) % 2:
                continue
            for c in itertools.product(vals, repeat=10):
                yield r, c, s
