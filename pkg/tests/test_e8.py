import itertools
import math
import random

import numpy as np
import pytest
from hypothesis import given, strategies as st

from enriques_mukai.e8 import (
    content_twist_search,
    ext_gcd,
    mod4_square_search,
    parity_pairing_search,
    shell_chunks,
    shell_tuples,
    solve_pairing,
    zigzag,
)
from enriques_mukai.errors import PreconditionError, SearchBoundExceeded, UnreachableTarget
from enriques_mukai.lattice import e8_functional, pair8, square8

A1 = (1, 0, 0, 0, 0, 0, 0, 0)
A2 = (0, 1, 0, 0, 0, 0, 0, 0)
A3 = (0, 0, 1, 0, 0, 0, 0, 0)
ZERO = (0,) * 8
e8_vectors = st.tuples(*[st.integers(-5, 5)] * 8)


@given(st.integers(-10**6, 10**6), st.integers(-10**6, 10**6))
def test_ext_gcd(a, b):
    g, x, y = ext_gcd(a, b)
    assert g == math.gcd(a, b) and a * x + b * y == g


class TestSolvePairing:
    def test_examples(self):
        assert solve_pairing(A1, 1) == A3
        assert solve_pairing(A1, 0) == ZERO
        with pytest.raises(UnreachableTarget):
            solve_pairing(tuple(2 * x for x in A1), 1)

    def test_zero_xi(self):
        with pytest.raises(PreconditionError):
            solve_pairing(ZERO, 0)

    @given(e8_vectors, st.integers(-50, 50))
    def test_reachable(self, xi, m):
        if not any(xi):
            return
        g = math.gcd(*xi)
        assert pair8(xi, solve_pairing(xi, m * g)) == m * g

    @given(e8_vectors, st.integers(1, 50))
    def test_unreachable(self, xi, t):
        g = math.gcd(*xi)
        if g in (0, 1) or t % g == 0:
            return
        with pytest.raises(UnreachableTarget):
            solve_pairing(xi, t)

    def test_deterministic(self):
        rng = random.Random(7)
        for _ in range(50):
            xi = tuple(rng.randint(-5, 5) for _ in range(8))
            if any(xi):
                assert solve_pairing(xi, math.gcd(*xi)) == solve_pairing(list(xi), math.gcd(*xi))


def test_range_law_on_radius_two_ball():
    """Only multiples of content(xi) occur, and every multiple in the inner
    half of the reached span is attained (the extremes are sparse)."""
    rng = random.Random(3)
    ball = np.array(list(itertools.product(range(-2, 3), repeat=8)), dtype=np.int64)
    for _ in range(10):
        xi = tuple(rng.choice([0, 0, 2, -2, 4, 6]) for _ in range(8))
        if not any(xi):
            continue
        g = math.gcd(*xi)
        vals = set((ball @ np.array(e8_functional(xi))).tolist())
        assert all(v % g == 0 for v in vals)
        lo, hi = min(vals) // 2, max(vals) // 2
        assert set(range(lo - lo % g, hi + 1, g)) <= vals


class TestEnumeration:
    def test_zigzag(self):
        assert zigzag(2) == [0, 1, -1, 2, -2]

    @pytest.mark.parametrize("radius", [1, 2])
    def test_numpy_and_python_orders_agree(self, radius):
        blocks = np.concatenate(list(shell_chunks(radius)))
        assert [tuple(r) for r in blocks.tolist()] == list(shell_tuples(radius))

    def test_shell_sizes(self):
        assert len(shell_tuples(1)) == 3**8 - 1
        assert sum(len(b) for b in shell_chunks(2)) == 5**8 - 3**8

    def test_first_candidate(self):
        assert shell_tuples(1)[0] == (0,) * 7 + (1,)


class TestContentTwistSearch:
    def test_examples(self):
        assert content_twist_search(2, (2,) + (0,) * 7, 0, 2, -8) == ZERO
        D = content_twist_search(2, ZERO, 2, 2, 4)
        assert 2 - 2 * square8(D) > 4 and math.gcd(*[2 * d for d in D]) == 2
        D = content_twist_search(4, A1, 0, 1, 0)
        x = tuple(a + 4 * b for a, b in zip(A1, D))
        assert D != A1 and math.gcd(*x) == 1 and -2 * pair8(A1, D) - 4 * square8(D) > 0

    def test_large_floor_uses_vectorised_shells(self):
        D = content_twist_search(2, ZERO, 0, 2, 150)
        assert max(map(abs, D)) >= 2 and -2 * square8(D) > 150

    def test_bound_exceeded(self):
        with pytest.raises(SearchBoundExceeded) as info:
            content_twist_search(2, ZERO, 0, 2, 10**6, radius=2)
        assert info.value.radius == 2

    def test_bad_p(self):
        with pytest.raises(PreconditionError):
            content_twist_search(4, A1, 0, 2, 0)

    @given(st.integers(1, 12), e8_vectors, st.integers(-20, 20), st.integers(-10, 30))
    def test_postcondition(self, r, xi, s, floor):
        p = math.gcd(r, *xi)
        D = content_twist_search(r, xi, s, p, floor)
        x = tuple(a + r * b for a, b in zip(xi, D))
        assert math.gcd(*x) == p
        assert s - 2 * pair8(xi, D) - r * square8(D) > floor


class TestMod4Search:
    def test_examples(self):
        eta = mod4_square_search(A1)
        assert (square8(eta) - 2 * pair8(A1, eta)) % 4 == 2
        assert (square8(A2) - 2 * pair8(A1, A2)) % 4 == 2
        assert (square8(A1) - 2 * pair8(A1, A1)) % 4 == 2
        assert eta != ZERO

    @given(e8_vectors)
    def test_property(self, xi):
        if not any(xi):
            return
        eta = mod4_square_search(xi)
        diff = tuple(a - b for a, b in zip(xi, eta))
        assert (square8(diff) - square8(xi) - 2) % 4 == 0


class TestParitySearch:
    @staticmethod
    def _ok(xi, eta):
        half = square8(eta) // 2
        return pair8(xi, eta) == (1 if half % 2 else -1)

    def test_examples(self):
        assert self._ok(A1, A3) and not self._ok(A1, tuple(-x for x in A3))
        assert self._ok(A1, parity_pairing_search(A1))
        assert self._ok(A3, A1)
        assert self._ok(A3, parity_pairing_search(A3))

    def test_needs_primitive(self):
        with pytest.raises(PreconditionError):
            parity_pairing_search(tuple(2 * x for x in A1))

    @given(e8_vectors)
    def test_property(self, xi):
        if math.gcd(*xi) != 1:
            return
        assert self._ok(xi, parity_pairing_search(xi))

    def test_radius_zero_reports_radius(self):
        with pytest.raises(SearchBoundExceeded) as info:
            parity_pairing_search(A1, radius=0)
        assert "radius 0" in str(info.value)
