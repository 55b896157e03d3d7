"""Constructive searches inside E8(-1).

E8 vectors are plain 8-tuples of integers in the simple-root basis.  Bounded
searches scan candidates shell by shell in increasing sup-norm; inside a shell
the order is lexicographic, with each coordinate ranked 0, 1, -1, 2, -2, ...
Small shells are scanned in pure Python (most searches stop after a handful of
candidates); larger shells go through numpy in chunks.  Both paths visit
candidates in the same order, so results never depend on which one ran.
"""

from __future__ import annotations

import itertools
import math
from functools import lru_cache

import numpy as np

from .config import DEFAULT_SEARCH_RADIUS
from .errors import InternalConsistencyError, PreconditionError, SearchBoundExceeded, UnreachableTarget
from .lattice import E8_GRAM, e8_functional, pair8, square8

ZERO8 = (0,) * 8

# Shells up to this radius are materialised as tuples and scanned in Python.
_PY_SHELLS = 1
# numpy evaluation is exact while every intermediate stays far below 2**63.
_NP_SAFE = 1 << 20


def ext_gcd(a, b):
    """Return ``(g, x, y)`` with ``a*x + b*y = g = gcd(a, b) >= 0``."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        return -a, -x0, -y0
    return a, x0, y0


def content8(x):
    return math.gcd(*x)


def is_primitive8(x):
    return math.gcd(*x) == 1


def solve_pairing(xi, t):
    """An eta with ``(xi, eta) = t``.

    The functional ``eta -> (xi, eta)`` has coefficient vector ``G xi``; since
    E8 is unimodular, the gcd of those coefficients is ``content(xi)``.  An
    extended gcd accumulated left to right gives the deterministic answer.
    """
    xi = tuple(int(x) for x in xi)
    t = int(t)
    if not any(xi):
        raise PreconditionError("solve_pairing needs a nonzero xi")
    w = e8_functional(xi)
    g, coeffs = 0, [0] * 8
    for i, wi in enumerate(w):
        g, a, b = ext_gcd(g, wi)
        coeffs = [a * c for c in coeffs]
        coeffs[i] = b
    if g != content8(xi):
        raise InternalConsistencyError(f"gcd of G*xi is {g}, content of xi is {content8(xi)}")
    if t % g:
        raise UnreachableTarget(f"(xi, eta) only takes multiples of {g}; target {t} is unreachable")
    eta = tuple(c * (t // g) for c in coeffs)
    if pair8(xi, eta) != t:
        raise InternalConsistencyError(f"solve_pairing produced a wrong answer for xi={xi}, t={t}")
    return eta


# ---------------------------------------------------------------------------
# Candidate enumeration

def zigzag(radius):
    """0, 1, -1, 2, -2, ..., radius, -radius."""
    out = [0]
    for k in range(1, radius + 1):
        out += [k, -k]
    return out


@lru_cache(maxsize=None)
def shell_tuples(radius):
    """All E8 vectors of sup-norm exactly ``radius``, in search order."""
    vals = zigzag(radius)
    return tuple(v for v in itertools.product(vals, repeat=8) if max(map(abs, v)) == radius)


@lru_cache(maxsize=8)
def _suffix_block(radius, width):
    vals = np.array(zigzag(radius), dtype=np.int64)
    grids = np.meshgrid(*([vals] * width), indexing="ij")
    return np.stack([g.ravel() for g in grids], axis=1)


def shell_chunks(radius, prefix_len=3):
    """Yield the sup-norm ``radius`` shell as int64 arrays, in search order."""
    if radius == 0:
        yield np.zeros((1, 8), dtype=np.int64)
        return
    suffix = _suffix_block(radius, 8 - prefix_len)
    suffix_max = np.abs(suffix).max(axis=1)
    for prefix in itertools.product(zigzag(radius), repeat=prefix_len):
        pmax = max(map(abs, prefix))
        rows = suffix if pmax == radius else suffix[suffix_max == radius]
        if len(rows) == 0:
            continue
        block = np.empty((len(rows), 8), dtype=np.int64)
        block[:, :prefix_len] = prefix
        block[:, prefix_len:] = rows
        yield block


_GRAM_NP = np.array(E8_GRAM, dtype=np.int64)


def _np_square(block):
    return np.einsum("ij,jk,ik->i", block, _GRAM_NP, block)


def _search(name, radius, accept_py, accept_np, magnitude):
    """First candidate in search order accepted by the predicate.

    ``accept_np`` maps a candidate block to a boolean mask and must agree with
    ``accept_py``; it is used only while ``magnitude`` keeps int64 exact.
    """
    for R in range(0, radius + 1):
        if R <= _PY_SHELLS or magnitude >= _NP_SAFE:
            cands = (ZERO8,) if R == 0 else shell_tuples(R) if R <= 2 else lazy_shell(R)
            for d in cands:
                if accept_py(d):
                    return d
        else:
            for block in shell_chunks(R):
                hits = np.flatnonzero(accept_np(block))
                if len(hits):
                    d = tuple(int(x) for x in block[hits[0]])
                    if not accept_py(d):
                        raise InternalConsistencyError(f"{name}: vectorised and scalar checks disagree at {d}")
                    return d
    raise SearchBoundExceeded(name, radius)


def lazy_shell(radius):
    vals = zigzag(radius)
    return (v for v in itertools.product(vals, repeat=8) if max(map(abs, v)) == radius)


def content_twist_search(r, xi, s, p, floor, radius=DEFAULT_SEARCH_RADIUS):
    """D in E8 with ``content(xi + r D) == p`` and ``s - 2(xi, D) - r (D^2) > floor``."""
    xi = tuple(int(x) for x in xi)
    r, s, p, floor = int(r), int(s), int(p), int(floor)
    if p <= 0:
        raise PreconditionError(f"target content must be positive, got {p}")
    if p != math.gcd(r, *xi):
        raise PreconditionError(f"p={p} differs from gcd(r, xi)={math.gcd(r, *xi)}")

    def ok(d):
        x = tuple(a + r * b for a, b in zip(xi, d))
        return math.gcd(*x) == p and s - 2 * pair8(xi, d) - r * square8(d) > floor

    w = np.array(e8_functional(xi), dtype=np.int64)
    xi_np = np.array(xi, dtype=np.int64)

    def ok_np(block):
        x = xi_np + r * block
        cont = np.gcd.reduce(np.abs(x), axis=1)
        s_new = s - 2 * (block @ w) - r * _np_square(block)
        return (cont == p) & (s_new > floor)

    mag = max([abs(r), abs(s), abs(floor)] + [abs(a) for a in xi]) * 64
    d = _search("content_twist_search", radius, ok, ok_np, mag)
    if not ok(d):
        raise InternalConsistencyError("content_twist_search postcondition failed")
    return d


def mod4_square_search(xi, radius=DEFAULT_SEARCH_RADIUS):
    """eta with ``(eta^2) - 2 (xi, eta) = 2 (mod 4)``, i.e. ``((xi - eta)^2) = (xi^2) + 2 (mod 4)``."""
    xi = tuple(int(x) for x in xi)
    if not any(xi):
        raise PreconditionError("mod4_square_search needs a nonzero xi")

    def ok(eta):
        return (square8(eta) - 2 * pair8(xi, eta)) % 4 == 2

    w = np.array(e8_functional(xi), dtype=np.int64)

    def ok_np(block):
        return (_np_square(block) - 2 * (block @ w)) % 4 == 2

    mag = max(abs(a) for a in xi) * 64
    return _search("mod4_square_search", radius, ok, ok_np, mag)


def parity_pairing_search(xi, radius=DEFAULT_SEARCH_RADIUS):
    """eta with ``(xi, eta) = -1`` when ``(eta^2)/2`` is even and ``+1`` when odd."""
    xi = tuple(int(x) for x in xi)
    if not is_primitive8(xi):
        raise PreconditionError(f"parity_pairing_search needs a primitive xi, got content {content8(xi)}")

    def ok(eta):
        half = square8(eta) // 2
        return pair8(xi, eta) == (1 if half % 2 else -1)

    w = np.array(e8_functional(xi), dtype=np.int64)

    def ok_np(block):
        half = _np_square(block) // 2
        target = np.where(half % 2 == 1, 1, -1)
        return block @ w == target

    mag = max(abs(a) for a in xi) * 64
    return _search("parity_pairing_search", radius, ok, ok_np, mag)
