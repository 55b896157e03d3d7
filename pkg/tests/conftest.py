import os

from hypothesis import assume, settings, strategies as st

from enriques_mukai.lattice import MukaiVector, NSClass, is_primitive

settings.register_profile("default", max_examples=150, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


def coords(bound=4, n=10):
    return st.tuples(*([st.integers(-bound, bound)] * n))


@st.composite
def ns_classes(draw, bound=4):
    return NSClass.from_free(draw(coords(bound)), draw(st.integers(0, 1)))


@st.composite
def mukai_vectors(draw, r_min=-6, r_max=6, bound=4, s_bound=12):
    r = draw(st.integers(r_min, r_max))
    s = draw(st.integers(-s_bound, s_bound).map(lambda x: 2 * (x // 2) + (r % 2)))
    return MukaiVector(r, draw(ns_classes(bound)), s)


@st.composite
def primitive_vectors(draw, r_min=1, r_max=12, bound=3, s_bound=16):
    v = draw(mukai_vectors(r_min, r_max, bound, s_bound))
    assume(is_primitive(v))
    return v


def vec(r, coords_=(), s=0, kappa=0):
    """Shorthand: coords given as a sparse prefix, padded with zeros."""
    c = tuple(coords_) + (0,) * (10 - len(coords_))
    return MukaiVector(r, NSClass.from_free(c, kappa), s)


def a(i, m=1):
    """Free coordinates of m * alpha_i."""
    c = [0] * 10
    c[1 + i] = m
    return tuple(c)
