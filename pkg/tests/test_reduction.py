import math
import random

import pytest
from hypothesis import given

from conftest import a, primitive_vectors, vec
from enriques_mukai.config import ReductionConfig
from enriques_mukai.errors import PreconditionError, SearchBoundExceeded, StepCapExceeded
from enriques_mukai.lattice import classify_content, is_primitive, mukai_square
from enriques_mukai.moves import replay
from enriques_mukai.reduction import land_rank2, normalize_lemma1, reduce, reduce_even, reduce_odd


def assert_canonical(v, form):
    """Shape and conservation of a canonical form, plus trace replay."""
    w = form.vector
    sq = mukai_square(v)
    assert mukai_square(w) == sq and form.ell == classify_content(v).ell
    if v.r % 2:
        assert (w.r, w.c1.free, w.s) == (1, (0,) * 10, sq)
    elif form.ell == 2:
        assert w.r == 2 and w.c1.is_zero() and 2 * w.s == sq
    else:
        assert w.r == 2 and math.gcd(*w.c1.free) == 1
    assert replay(form.trace) == w


class TestEvenExamples:
    def test_rank_two_fixed_points(self):
        for v in (vec(2, a(1), 4), vec(2, (1,), 0), vec(2, kappa=1)):
            form = reduce_even(v)
            assert form.vector == v and len(form.trace) == 0

    def test_sigma_plus_f(self):
        form = reduce_even(vec(4, (1, 1)))
        assert_canonical(vec(4, (1, 1)), form)
        # frozen output of the deterministic schedule
        assert form.vector == vec(2, (1, 9, 4), 8, 1) and len(form.trace) == 4

    def test_content_two_landing(self):
        v = vec(4, (0, 2, 2), 2)
        form = land_rank2(v)
        assert form.vector.r == 2 and form.vector.c1.is_zero() and form.vector.s == 0
        assert_canonical(v, form)

    def test_negative_square(self):
        v = vec(4, a(1))
        form = land_rank2(v)
        assert_canonical(v, form)
        assert mukai_square(form.vector) == -2

    def test_non_primitive_rejected(self):
        with pytest.raises(PreconditionError):
            reduce_even(vec(6, (3, 3)))
        # (2, 0, 2) has gcd(2, 0, 0) = 2, so it is not primitive either
        with pytest.raises(PreconditionError):
            land_rank2(vec(2, s=2))

    def test_parity_of_rank_checked(self):
        with pytest.raises(PreconditionError):
            reduce_even(vec(3, s=1))
        with pytest.raises(PreconditionError):
            reduce_odd(vec(2))
        with pytest.raises(PreconditionError):
            reduce(vec(0, (0, 1)))

    def test_step_cap(self):
        with pytest.raises(StepCapExceeded):
            reduce(vec(4, (1, 1)), ReductionConfig(step_cap=0))
        reduce(vec(2, a(1), 4), ReductionConfig(step_cap=0))

    def test_search_radius_zero(self):
        with pytest.raises(SearchBoundExceeded):
            land_rank2(vec(4, a(1)), ReductionConfig(search_radius=0))

    def test_half_half_shapes(self):
        # (d1, d2) = (r/2, r/2) with content of xi in each residue class
        for v in (vec(4, (2, 2) + a(1)[2:], 0), vec(4, (2, 2) + a(1, 2)[2:], 2), vec(4, (2, 2) + a(1, 4)[2:], 2),
                  vec(8, (4, 4) + a(2, 3)[2:], 2)):
            assert is_primitive(v)
            assert_canonical(v, reduce(v))


class TestOddExamples:
    def test_examples(self):
        assert reduce_odd(vec(1, s=3)).vector == vec(1, s=3)
        for v in (vec(1, (1, 1), 1), vec(3, (1,), 1)):
            form = reduce_odd(v)
            assert (form.vector.r, form.vector.c1.free, form.vector.s) == (1, (0,) * 10, 3)
            assert_canonical(v, form)

    def test_kappa_is_tracked(self):
        assert reduce(vec(3, (1,), 1)).vector.kappa == 1
        assert reduce(vec(3, (1,), 1, 1)).vector.kappa == 0


class TestLemmaNormalisation:
    def test_variant_one(self):
        v = vec(2, a(1), 4)
        w, trace = normalize_lemma1(v)
        assert replay(trace) == w
        assert w.r % 2 == 0 and w.r > mukai_square(v)
        assert (w.s - v.s) % 2 == 0
        assert w.c1.d1 == 0 and w.c1.d2 == 0 and math.gcd(*w.c1.e) == 1

    def test_variant_two_shape(self):
        v = vec(2, a(1), 4)
        w1, _ = normalize_lemma1(v, 1)
        w2, trace = normalize_lemma1(v, 2)
        assert replay(trace) == w2 and w2.s == w1.r

    def test_congruences_with_content_two(self):
        v = vec(8, (0, 4) + a(2, 2)[2:], 2)
        ell = classify_content(v).ell
        w, trace = normalize_lemma1(v)
        assert replay(trace) == w
        assert ell == 2
        assert (w.r - v.r) % (2 * ell) == 0 and (w.s - v.s) % (2 * ell) == 0
        assert w.c1.d1 == 0 and w.c1.d2 == 4
        assert math.gcd(*w.c1.e) == ell and w.r > mukai_square(v)
        w2, _ = normalize_lemma1(v, 2)
        assert w2.s == w.r and w2.c1.d2 == -4

    def test_already_normalised_is_short(self):
        v = vec(4, (0, 2) + a(2, 2)[2:], 2)
        w, trace = normalize_lemma1(v)
        assert w == v and len(trace) <= 2

    def test_wrong_shape(self):
        with pytest.raises(PreconditionError):
            normalize_lemma1(vec(2, (1,)))
        with pytest.raises(PreconditionError):
            normalize_lemma1(vec(2, a(1), 4), variant=3)


@given(primitive_vectors(r_min=1, r_max=16, bound=3))
def test_reduction_property(v):
    assert_canonical(v, reduce(v))


def test_deterministic():
    rng = random.Random(5)
    for _ in range(30):
        r = rng.choice([2, 4, 6, 8])
        v = vec(r, [rng.randint(-2, 2) for _ in range(10)], 2 * rng.randint(-4, 4))
        if is_primitive(v):
            assert reduce(v).trace.to_dict() == reduce(v).trace.to_dict()


def test_wide_random_vectors():
    rng = random.Random(2024)
    done = 0
    while done < 300:
        r = rng.randint(1, 40)
        v = vec(r, [rng.randint(-9, 9) for _ in range(10)], r % 2 + 2 * rng.randint(-20, 20))
        if not is_primitive(v):
            continue
        form = reduce(v)
        assert_canonical(v, form)
        assert len(form.trace) <= 64
        done += 1
