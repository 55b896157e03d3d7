"""Isometries of the Mukai lattice: line-bundle twists, the (-1)-reflection and
the hyperbolic basis change, together with replayable move traces.

Every move has a raw form working on ``(r, c, s, kappa)`` tuples (``c`` the
10 free coordinates); the reduction engine runs on those to avoid object churn.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .config import DEFAULT_SEARCH_RADIUS
from .e8 import ext_gcd, lazy_shell, shell_tuples
from .errors import (
    InternalConsistencyError,
    InvalidInputError,
    MukaiError,
    PreconditionError,
    SearchBoundExceeded,
    TraceReplayError,
)
from .lattice import (
    GRAM,
    RANK,
    MukaiVector,
    NSClass,
    pair8,
    pair10,
    raw_content,
    raw_primitive,
    square8,
    square10,
    vector_from_dict,
    vector_to_dict,
)

TWIST = "twist"
REFLECT = "reflect"
HYP_CHANGE = "hyp_change"
KINDS = (TWIST, REFLECT, HYP_CHANGE)


# ---------------------------------------------------------------------------
# Raw moves on (r, c, s, kappa)

def raw_twist(r, c, s, k, D, kD=0):
    s2 = s - 2 * pair10(c, D) - r * square10(D)
    return r, tuple(a + r * b for a, b in zip(c, D)), s2, (k + r * kD) % 2


def reflect_violation(r, c, s):
    """Name of the first failed reflection precondition, or None."""
    if r <= 0:
        return f"rank must be positive (r={r})"
    if s <= 0:
        return f"s must be positive (s={s})"
    c2 = square10(c)
    if c2 >= 0:
        return f"(c1^2) must be negative (got {c2})"
    return None


def raw_reflect(r, c, s, k):
    why = reflect_violation(r, c, s)
    if why:
        raise PreconditionError(f"reflect: {why}")
    # The determinant picks up <v, v(K_X)> K_X = (s - r)/2 K_X.
    return s, tuple(-a for a in c), r, (k + (s - r) // 2) % 2


def hyp_image(c, eta):
    """Image of free coordinates under sigma -> sigma - (eta^2/2) f + eta,
    f -> f, x -> x - (x, eta) f on E8."""
    d1, d2, xi = c[0], c[1], c[2:]
    d2n = d2 - d1 * (square8(eta) // 2) - pair8(xi, eta)
    return (d1, d2n) + tuple(a + d1 * b for a, b in zip(xi, eta))


def raw_hyp_change(r, c, s, k, eta):
    return r, hyp_image(c, eta), s, k


def hyp_change_matrix(eta):
    """10x10 integer matrix of the basis change, acting on column vectors."""
    cols = []
    for i in range(RANK):
        unit = tuple(1 if j == i else 0 for j in range(RANK))
        cols.append(hyp_image(unit, eta))
    return [[cols[j][i] for j in range(RANK)] for i in range(RANK)]


def preserves_gram(m):
    """Check ``M^T G M = G`` exactly."""
    gm = [[sum(GRAM[i][k] * m[k][j] for k in range(RANK)) for j in range(RANK)] for i in range(RANK)]
    for i in range(RANK):
        for j in range(RANK):
            if sum(m[k][i] * gm[k][j] for k in range(RANK)) != GRAM[i][j]:
                return False
    return True


# ---------------------------------------------------------------------------
# Public moves on MukaiVector

def _pack(raw):
    r, c, s, k = raw
    return MukaiVector(r, NSClass.from_free(c, k), s)


def twist(v: MukaiVector, D: NSClass) -> MukaiVector:
    """Tensor with a line bundle of class D."""
    return _pack(raw_twist(v.r, v.c1.free, v.s, v.c1.kappa, D.free, D.kappa))


def reflect(v: MukaiVector) -> MukaiVector:
    """The (-1)-reflection ``(r, c1, s) -> (s, -c1, r)``.

    Needs ``r > 0``, ``s > 0`` and ``(c1^2) < 0``.  kappa shifts by ``(s - r)/2``.
    """
    return _pack(raw_reflect(v.r, v.c1.free, v.s, v.c1.kappa))


def _check_eta(eta):
    eta = tuple(eta)
    if len(eta) != 8:
        raise InvalidInputError(f"eta must have 8 E8 coordinates, got {len(eta)}")
    return eta


def hyp_change(v: MukaiVector, eta, check=True) -> MukaiVector:
    """Apply the isometry moving sigma to ``sigma - (eta^2/2) f + eta``."""
    eta = _check_eta(eta)
    if check and not preserves_gram(hyp_change_matrix(eta)):
        raise PreconditionError(f"basis change for eta={eta} is not an isometry")
    return _pack(raw_hyp_change(v.r, v.c1.free, v.s, v.c1.kappa, eta))


# ---------------------------------------------------------------------------
# Traces

@dataclass(frozen=True)
class Move:
    """One recorded move; ``snapshot`` is ``(square, ell)`` before the move."""

    kind: str
    param: tuple = ()
    kappa_d: int = 0
    snapshot: tuple | None = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise InvalidInputError(f"unknown move kind {self.kind!r}")
        want = {TWIST: RANK, REFLECT: 0, HYP_CHANGE: 8}[self.kind]
        if len(self.param) != want:
            raise InvalidInputError(f"{self.kind} takes {want} coordinates, got {len(self.param)}")
        if self.kappa_d not in (0, 1):
            raise InvalidInputError("kappaD must be 0 or 1")

    def apply_raw(self, raw):
        r, c, s, k = raw
        if self.kind == TWIST:
            return raw_twist(r, c, s, k, self.param, self.kappa_d)
        if self.kind == REFLECT:
            return raw_reflect(r, c, s, k)
        return raw_hyp_change(r, c, s, k, self.param)

    def apply(self, v: MukaiVector) -> MukaiVector:
        return _pack(self.apply_raw(v.raw))

    def to_dict(self):
        d = {"kind": self.kind}
        if self.kind == TWIST:
            d["D"] = list(self.param)
            d["kappaD"] = self.kappa_d
        elif self.kind == HYP_CHANGE:
            d["eta"] = list(self.param)
        if self.snapshot is not None:
            d["snapshot"] = {"square": self.snapshot[0], "ell": self.snapshot[1]}
        return d

    @classmethod
    def from_dict(cls, d):
        if not isinstance(d, dict) or "kind" not in d:
            raise InvalidInputError("each step must be an object with a 'kind'")
        kind = d["kind"]
        snap = d.get("snapshot")
        snapshot = None if snap is None else (int(snap["square"]), int(snap["ell"]))
        if kind == TWIST:
            return cls(TWIST, tuple(int(x) for x in d["D"]), int(d.get("kappaD", 0)), snapshot)
        if kind == HYP_CHANGE:
            return cls(HYP_CHANGE, tuple(int(x) for x in d["eta"]), 0, snapshot)
        return cls(kind, (), 0, snapshot)


@dataclass(frozen=True)
class MoveTrace:
    initial: MukaiVector
    steps: tuple = field(default_factory=tuple)
    final: MukaiVector | None = None

    def __len__(self):
        return len(self.steps)

    def to_dict(self):
        return {
            "initial": vector_to_dict(self.initial),
            "steps": [m.to_dict() for m in self.steps],
            "final": vector_to_dict(self.final if self.final is not None else self.initial),
        }

    @classmethod
    def from_dict(cls, d):
        if not isinstance(d, dict):
            raise InvalidInputError("a trace must be a JSON object")
        try:
            initial, _ = vector_from_dict(d["initial"])
            final, _ = vector_from_dict(d["final"])
            steps = tuple(Move.from_dict(m) for m in d["steps"])
        except KeyError as exc:
            raise InvalidInputError(f"trace is missing field {exc}") from None
        return cls(initial, steps, final)


def _invariants(raw):
    r, c, s, _ = raw
    ell = raw_content(r, c, s)
    return square10(c) + r * s, ell, raw_primitive(r, c, s)


def replay_raw(initial, steps, final=None):
    """Re-apply raw steps, checking preconditions and conserved invariants.

    Steps are ``Move`` objects.  Errors carry the offending step index.
    """
    cur = initial
    base = _invariants(cur)
    for i, m in enumerate(steps):
        if m.snapshot is not None and m.snapshot != base[:2]:
            raise TraceReplayError(i, f"snapshot {m.snapshot} does not match (square, ell) = {base[:2]}")
        try:
            cur = m.apply_raw(cur)
        except MukaiError as exc:
            raise TraceReplayError(i, f"{m.kind}: {exc}") from None
        now = _invariants(cur)
        if now != base:
            raise TraceReplayError(i, f"invariants changed from {base} to {now}")
    if final is not None and cur != final:
        raise TraceReplayError(None, f"replay gives {cur}, trace records {final}")
    return cur


def replay(trace: MoveTrace) -> MukaiVector:
    """Replay a trace from its initial vector and compare with its final one."""
    if trace.initial.is_zero():
        raise TraceReplayError(None, "initial vector is zero")
    final = None if trace.final is None else trace.final.raw
    return _pack(replay_raw(trace.initial.raw, trace.steps, final))


# ---------------------------------------------------------------------------
# Elliptic shadow

def _dual_vector(f):
    """Some u with (u, f) = 1, for primitive f in the unimodular lattice."""
    w = [sum(GRAM[i][j] * f[j] for j in range(RANK)) for i in range(RANK)]
    g, coeffs = 0, [0] * RANK
    for i, wi in enumerate(w):
        g, a, b = ext_gcd(g, wi)
        coeffs = [a * x for x in coeffs]
        coeffs[i] = b
    if g != 1:
        raise PreconditionError(f"f_class is not primitive (gcd {g})")
    return tuple(coeffs)


def elliptic_shadow(v: MukaiVector, f_class: NSClass, radius=None) -> MukaiVector:
    """Rank-0 vector ``(0, D, 0)`` with ``(D^2) = <v^2>`` and ``(D, 2 f) = r``.

    Only these two numbers carry meaning; D itself is a deterministic choice
    ``D = (r/2) sigma' + y f + z`` with ``sigma'`` dual to ``f``, ``y`` the
    least integer making ``<v^2> - r y <= 0`` and ``z`` orthogonal to both,
    picked first in E8 search order.
    """
    radius = DEFAULT_SEARCH_RADIUS if radius is None else radius
    f = f_class.free
    r = v.r
    if square10(f) != 0:
        raise PreconditionError(f"f_class must be isotropic, (f^2) = {square10(f)}")
    if math.gcd(*f) != 1:
        raise PreconditionError("f_class must be primitive")
    if r <= 0:
        raise PreconditionError(f"rank must be positive, got {r}")
    cf = pair10(v.c1.free, f)
    if 2 * cf != r:
        raise PreconditionError(f"(c1, f_class) = {cf} but r/2 = {r / 2}")
    u = _dual_vector(f)
    half = square10(u) // 2
    sig = tuple(a - half * b for a, b in zip(u, f))
    N = square10(v.c1.free) + r * v.s
    y = -((-N) // r)
    m = r * y - N
    h = r // 2

    def proj(x):
        a, b = pair10(x, f), pair10(x, sig)
        return tuple(xi - a * si - b * fi for xi, si, fi in zip(x, sig, f))

    z = None
    for R in range(radius + 1):
        cands = [(0,) * 8] if R == 0 else shell_tuples(R) if R <= 2 else lazy_shell(R)
        for e in cands:
            zz = proj((0, 0) + tuple(e))
            if square10(zz) == -m:
                z = zz
                break
        if z is not None:
            break
    if z is None:
        raise SearchBoundExceeded("elliptic_shadow", radius)
    D = tuple(h * a + y * b + c for a, b, c in zip(sig, f, z))
    if square10(D) != N or 2 * pair10(D, f) != r:
        raise InternalConsistencyError("elliptic shadow construction failed its own check")
    return MukaiVector(0, NSClass.from_free(D, v.c1.kappa), 0)
