"""Reduction of primitive Mukai vectors to rank-2 (even rank) or rank-1 (odd
rank) canonical forms by a recorded chain of isometry moves.

Even rank, loop until the rank is 2:

* bring ``d1`` (the sigma coefficient) into ``(-r/2, r/2]`` by twisting with
  multiples of sigma; if it is not 0 or r/2, drop the rank by
  twist-reflect-twist-reflect, using ``(c1, f) = d1``;
* otherwise do the same with ``d2`` and f;
* ``(d1, d2) = (r/2, r/2)`` is moved off by a hyperbolic basis change;
* the shapes ``(0, 0)``, ``(0, r/2)``, ``(r/2, 0)`` land at rank 2 directly.

Odd rank follows the same rank drops; once ``c1`` lies in E8 a basis change
(or a clearing twist plus one reflection) produces a drop again, until the
rank is 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .config import ReductionConfig
from .e8 import content_twist_search, mod4_square_search, parity_pairing_search, solve_pairing
from .errors import InternalConsistencyError, PreconditionError, StepCapExceeded
from .lattice import MukaiVector, NSClass, pair10, raw_content, raw_primitive, square8, square10, vector_to_dict
from .moves import HYP_CHANGE, REFLECT, TWIST, Move, MoveTrace, raw_hyp_change, raw_reflect, raw_twist

_ZERO10 = (0,) * 10
_ALPHA1 = (1, 0, 0, 0, 0, 0, 0, 0)


def _e8(xi):
    return (0, 0) + tuple(xi)


def _unit(i, m):
    out = [0] * 10
    out[i] = m
    return tuple(out)


def _rep(d, r):
    """Representative of d mod r in ``(-r/2, r/2]`` (``[-(r-1)/2, (r-1)/2]`` for odd r)."""
    lo = -((r - 1) // 2)
    return (d - lo) % r + lo


@dataclass(frozen=True)
class CanonicalForm:
    vector: MukaiVector
    ell: int
    trace: MoveTrace

    @property
    def square(self):
        v = self.vector
        return square10(v.c1.free) + v.r * v.s

    def summary(self):
        v = self.vector
        return {"r": v.r, "c1": list(v.c1.free), "s": v.s, "kappa": v.kappa,
                "ell": self.ell, "steps": len(self.trace.steps)}

    def to_dict(self):
        return {
            "input": vector_to_dict(self.trace.initial),
            "canonical": vector_to_dict(self.vector),
            "ell": self.ell,
            "trace": self.trace.to_dict(),
        }


class _Reducer:
    """Mutable move recorder over a raw ``(r, c, s, kappa)`` state."""

    __slots__ = ("state", "moves", "config", "square", "ell")

    def __init__(self, raw, config):
        self.state = raw
        self.moves = []
        self.config = config
        r, c, s, _ = raw
        self.square = square10(c) + r * s
        self.ell = raw_content(r, c, s)

    # -- moves -------------------------------------------------------------
    def _record(self, move, new):
        if len(self.moves) >= self.config.step_cap:
            raise StepCapExceeded(f"reduction needs more than {self.config.step_cap} moves")
        self.moves.append(move)
        self.state = new

    def twist(self, D, kd=0):
        if not any(D) and not kd:
            return
        D = tuple(D)
        self._record(Move(TWIST, D, kd, (self.square, self.ell)), raw_twist(*self.state, D, kd))

    def reflect(self):
        self._record(Move(REFLECT, (), 0, (self.square, self.ell)), raw_reflect(*self.state))

    def hyp(self, eta):
        eta = tuple(eta)
        self._record(Move(HYP_CHANGE, eta, 0, (self.square, self.ell)), raw_hyp_change(*self.state, eta))

    # -- building blocks ---------------------------------------------------
    @property
    def radius(self):
        return self.config.search_radius

    def raise_s(self, floor):
        """Twist by t*alpha_1 (t = 1, -1, 2, -2, ...) until s > floor."""
        r, c, s, _ = self.state
        if s > floor:
            return
        a = pair10(c, _e8(_ALPHA1))
        t = 1
        while s - 2 * t * a + 2 * r * t * t <= floor:
            t = -t if t > 0 else -t + 1
        self.twist(_e8(tuple(t * x for x in _ALPHA1)))

    def drop_rank(self, axis):
        """Strictly lower the rank using ``d = (c1, e)`` where e is f (axis 1)
        or sigma (axis 0) and d is the other hyperbolic coordinate."""
        r, c, s, _ = self.state
        d = c[1 - axis]
        floor = max(self.square, 0)
        self.raise_s(floor)
        self.reflect()
        target = (r - 1) % (2 * abs(d)) + 1
        # after the reflection (c1, e) = -d, so the twist by k e moves s to r + 2 d k
        k, rem = divmod(target - r, 2 * d)
        if rem:
            raise InternalConsistencyError("rank-drop twist is not integral")
        self.twist(_unit(axis, k))
        self.reflect()
        if self.state[0] != target:
            raise InternalConsistencyError(f"rank drop landed at {self.state[0]}, expected {target}")

    def normalise(self, axis):
        """Twist by a multiple of sigma (axis 0) or f (axis 1) so that the
        coordinate on that axis lies in the representative range."""
        r, c = self.state[0], self.state[1]
        d = c[axis]
        rep = _rep(d, r)
        if rep != d:
            self.twist(_unit(axis, (rep - d) // r))
        return rep

    def finish_rank2(self):
        r, c, s, _ = self.state
        if r != 2:
            raise InternalConsistencyError(f"finish_rank2 called at rank {r}")
        if self.ell == 2:
            self.twist(tuple(-x // 2 for x in c))
        elif math.gcd(*c) != 1:
            j = next(i for i, x in enumerate(c) if x % 2)
            self.twist(_unit(j, (1 - c[j]) // 2))

    # -- content normalisation --
    def variant1(self):
        floor = max(self.square, 0)
        r, c, s, _ = self.state
        xi = c[2:]
        p = math.gcd(r, *xi)
        D = content_twist_search(r, xi, s, p, floor, self.radius)
        self.twist(_e8(D))
        self.reflect()
        r, c, s, _ = self.state
        l = math.gcd(r, p)
        D1 = content_twist_search(r, c[2:], s, l, floor, self.radius)
        self.twist(_e8(D1))
        self.reflect()

    def variant2(self):
        self.variant1()
        floor = max(self.square, 0)
        r, c, s, _ = self.state
        xi = c[2:]
        l = math.gcd(r, *xi)
        D2 = content_twist_search(r, xi, s, l, floor, self.radius)
        self.twist(_e8(D2))
        self.reflect()

    def land(self, e_axis):
        """Reach rank 2 from ``c1 = h e + xi`` (no e' component)."""
        f_axis = 1 - e_axis
        r, c, s, _ = self.state
        if c[f_axis]:
            raise PreconditionError("c1 has a component on the dual hyperbolic axis")
        if r == 2:
            self.finish_rank2()
            return
        h = c[e_axis]
        l = math.gcd(r, s, *c[2:])
        if r % 4 == 0 and s % 4 == 2:
            self.variant1()
            r, c, s, _ = self.state
            eta = solve_pairing(c[2:], s // 2 - c[e_axis] - 1)
            mult = 1
        elif r % 4 == 2 and h == 0 and l == 2:
            self.variant2()
            r, s = self.state[0], self.state[2]
            if not (r % 4 == 0 and s % 4 == 2):
                raise InternalConsistencyError(f"variant 2 gave r={r}, s={s}, expected r=0, s=2 mod 4")
            self.land(e_axis)
            return
        else:
            self.variant1()
            r, c, s, _ = self.state
            eta = solve_pairing(c[2:], 1 - c[e_axis])
            mult = s // 2 - 1
        D = [0] * 10
        D[f_axis] = 1
        D[e_axis] = -(square8(eta) // 2)
        D[2:] = eta
        self.twist(tuple(mult * x for x in D))
        if self.state[2] != 2:
            raise InternalConsistencyError(f"landing twist gave s={self.state[2]}, expected 2")
        self.reflect()
        self.finish_rank2()

    # -- main loops --------------------------------------------------------
    def run_even(self):
        while True:
            r = self.state[0]
            if r == 2:
                self.finish_rank2()
                return
            half = r // 2
            d1 = self.normalise(0)
            if d1 not in (0, half):
                self.drop_rank(1)
                continue
            d2 = self.normalise(1)
            if d2 not in (0, half):
                self.drop_rank(0)
                continue
            if d1 == half and d2 == half:
                self.leave_half_half()
                continue
            self.land(1 if d1 == 0 else 0)
            return

    def leave_half_half(self):
        r, c = self.state[0], self.state[1]
        xi = c[2:]
        kx = math.gcd(*xi)
        m = kx % r
        if m == 0:
            eta = _ALPHA1
        else:
            prim = tuple(x // kx for x in xi)
            if m == r // 2:
                eta = tuple(-x for x in mod4_square_search(prim, self.radius))
            else:
                eta = tuple(-x for x in parity_pairing_search(prim, self.radius))
        self.hyp(eta)
        d2 = _rep(self.state[1][1], r)
        if d2 == r // 2:
            raise InternalConsistencyError("basis change left (d1, d2) at (r/2, r/2)")

    def run_odd(self):
        while True:
            r, c, s, _ = self.state
            if r == 1:
                self.twist(tuple(-x for x in c))
                return
            if self.normalise(0):
                self.drop_rank(1)
                continue
            if self.normalise(1):
                self.drop_rank(0)
                continue
            r, c, s, _ = self.state
            xi = c[2:]
            kx = math.gcd(*xi)
            if kx % r:
                g = math.gcd(kx, r)
                u = pow(kx // g, -1, r // g)
                self.hyp(solve_pairing(xi, -kx * u))
                continue
            self.twist(_e8(tuple(-x // r for x in xi)))
            s = self.state[2]
            t = 1
            while math.gcd(t, s) != 1 or s + 2 * r * t * t <= 0:
                t += 1
            self.twist(_e8((t,) + (0,) * 7))
            self.reflect()


def _require_primitive(raw):
    r, c, s, _ = raw
    if r <= 0:
        raise PreconditionError(f"reduction needs positive rank, got r={r}")
    if not raw_primitive(r, c, s):
        raise PreconditionError("vector is not primitive")


def _check_result(red, initial):
    r, c, s, _ = red.state
    if square10(c) + r * s != red.square or raw_content(r, c, s) != red.ell:
        raise InternalConsistencyError("reduction changed <v^2> or ell")
    if initial[0] % 2:
        ok = r == 1 and not any(c) and s == red.square
    elif red.ell == 2:
        ok = r == 2 and not any(c) and 2 * s == red.square
    else:
        ok = r == 2 and math.gcd(*c) == 1 and square10(c) + 2 * s == red.square
    if not ok:
        raise InternalConsistencyError(f"reduction ended at non-canonical {red.state}")


def reduce_raw(raw, config=None):
    """Reduce a raw primitive vector; returns ``(final_raw, moves, ell)``."""
    config = config or ReductionConfig()
    _require_primitive(raw)
    red = _Reducer(raw, config)
    if raw[0] % 2:
        red.run_odd()
    else:
        red.run_even()
    _check_result(red, raw)
    return red.state, red.moves, red.ell


def _form(v, final_raw, moves, ell):
    final = MukaiVector(final_raw[0], NSClass.from_free(final_raw[1], final_raw[3]), final_raw[2])
    return CanonicalForm(final, ell, MoveTrace(v, tuple(moves), final))


def reduce_even(v: MukaiVector, config=None) -> CanonicalForm:
    if v.r % 2:
        raise PreconditionError(f"reduce_even needs even rank, got r={v.r}")
    return _form(v, *reduce_raw(v.raw, config))


def reduce_odd(v: MukaiVector, config=None) -> CanonicalForm:
    if v.r % 2 == 0:
        raise PreconditionError(f"reduce_odd needs odd rank, got r={v.r}")
    return _form(v, *reduce_raw(v.raw, config))


def reduce(v: MukaiVector, config=None) -> CanonicalForm:
    """Reduce a primitive vector of positive rank to its canonical form."""
    return _form(v, *reduce_raw(v.raw, config))


def _lemma_shape(v):
    """Check ``c1 = (r/2) b f + xi`` and return b."""
    r, c = v.r, v.c1.free
    if r <= 0 or r % 2:
        raise PreconditionError(f"rank must be even and positive, got r={r}")
    if not raw_primitive(r, c, v.s):
        raise PreconditionError("vector is not primitive")
    if c[0] != 0 or c[1] not in (0, r // 2, -(r // 2)):
        raise PreconditionError("c1 must have the form (r/2) b f + xi with b in {0, 1, -1}")
    return c[1] // (r // 2) if c[1] else 0


def normalize_lemma1(v: MukaiVector, variant: int = 1, config=None):
    """Two twist-reflect rounds making the E8 part primitive up to ell.

    Variant 1 returns ``(r', (r/2) b f + xi', s')``; variant 2 adds a third
    round and returns the reflected shape ``(s'', -((r/2) b f + xi''), r')``.
    """
    if variant not in (1, 2):
        raise PreconditionError(f"variant must be 1 or 2, got {variant}")
    _lemma_shape(v)
    red = _Reducer(v.raw, config or ReductionConfig())
    (red.variant1 if variant == 1 else red.variant2)()
    r, c, s, k = red.state
    out = MukaiVector(r, NSClass.from_free(c, k), s)
    return out, MoveTrace(v, tuple(red.moves), out)


def land_rank2(v: MukaiVector, config=None) -> CanonicalForm:
    """Rank-2 landing for ``c1 = (r/2) b f + xi``."""
    _lemma_shape(v)
    red = _Reducer(v.raw, config or ReductionConfig())
    red.land(1)
    _check_result(red, v.raw)
    return _form(v, red.state, red.moves, red.ell)
