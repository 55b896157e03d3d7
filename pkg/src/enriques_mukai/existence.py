"""Non-emptiness criteria for moduli of stable sheaves on Enriques surfaces.

Verdicts are for a general polarization: the answer does not depend on the
chamber, so the ample class only enters through the rank-0 effectivity test.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

from .errors import PreconditionError
from .lattice import (
    MukaiVector,
    NSClass,
    SurfaceContext,
    pair10,
    parity_class,
    raw_content,
    raw_primitive,
    square10,
)


class Case(str, enum.Enum):
    U1 = "U1"
    U2 = "U2"
    U3 = "U3"
    U_RANK0_INEFFECTIVE = "U_rank0_ineffective"
    N1 = "N1"
    N2 = "N2"
    N3 = "N3"
    N4 = "N4"
    N4_FAIL = "N4_fail"
    NOT_PRIMITIVE = "NotPrimitive"
    PARITY_VIOLATION = "ParityViolation"
    EMPTY = "Empty"


NONEMPTY_CASES = frozenset({Case.U1, Case.U2, Case.U3, Case.N1, Case.N2, Case.N3, Case.N4})

KAPPA_NOTE = "kappa-sensitive branch evaluated at kappa=0 (not supplied)"
NO_NODAL_DATA = "no nodal data supplied"


@dataclass(frozen=True)
class ExistenceVerdict:
    nonempty: bool
    case: Case
    certificate: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.nonempty != (self.case in NONEMPTY_CASES):
            raise ValueError(f"case {self.case.value} is inconsistent with nonempty={self.nonempty}")

    @property
    def matched_case(self):
        return self.case

    def to_dict(self):
        return {"nonempty": self.nonempty, "case": self.case.value, "certificate": self.certificate}


def _verdict(case, **cert):
    return ExistenceVerdict(case in NONEMPTY_CASES, case, cert)


def _common_cases(r, c, s, k, ell, sq, cert, labels):
    """Cases shared by the unnodal and nodal rules; returns a case or None."""
    one, two, three = labels
    if ell == 1 and sq >= -1:
        return one
    if ell == 2 and sq >= 2:
        return two
    if ell == 2 and sq == 0:
        even = all(x % 2 == 0 for x in c)
        kappa_ok = (k - r // 2) % 2 == 0
        cert["kappa_check"] = {"c1_even": even, "kappa": k, "required": (r // 2) % 2, "holds": even and kappa_ok}
        if even and kappa_ok:
            return three
    return None


def _prelude(v):
    r, c, s, k = v.r, v.c1.free, v.s, v.c1.kappa
    if r < 0:
        raise PreconditionError(f"rank must be non-negative, got r={r}")
    return r, c, s, k


def exists_unnodal(v: MukaiVector, ctx: SurfaceContext | None = None, kappa_asserted=True) -> ExistenceVerdict:
    """Non-emptiness on an unnodal Enriques surface."""
    ctx = ctx or SurfaceContext()
    if ctx.nodal:
        raise PreconditionError("exists_unnodal called with a nodal context")
    r, c, s, k = _prelude(v)
    if not raw_primitive(r, c, s):
        return _verdict(Case.NOT_PRIMITIVE)
    sq = square10(c) + r * s
    ell = raw_content(r, c, s)
    cert = {"ell": ell, "square": sq}
    if r == 0:
        c2, ch = square10(c), pair10(c, ctx.ample.free)
        cert["effective"] = {"c1_square": c2, "c1_dot_H": ch}
        if c2 < 0 or ch <= 0:
            return _verdict(Case.U_RANK0_INEFFECTIVE, **cert)
    case = _common_cases(r, c, s, k, ell, sq, cert, (Case.U1, Case.U2, Case.U3))
    if "kappa_check" in cert and not kappa_asserted:
        cert["note"] = KAPPA_NOTE
    return _verdict(case or Case.EMPTY, **cert)


def _nodal_match(c, k, r, cycles):
    """First listed cycle D with c = D (mod 2) and kappa = kappa_D + r/2."""
    pc = tuple(x % 2 for x in c)
    for i, d in enumerate(cycles):
        if parity_class(d) == pc and (k - d.kappa - r // 2) % 2 == 0:
            return i, d
    return None


def exists_nodal(v: MukaiVector, ctx: SurfaceContext, kappa_asserted=True) -> ExistenceVerdict:
    """Non-emptiness on a nodal Enriques surface with the listed nodal cycles.

    Listed cycles are taken as effective with ``|D + K_X|`` empty; their kappa
    (default 0) enters the congruence of the exceptional case.
    """
    if not ctx.nodal:
        raise PreconditionError("exists_nodal needs a nodal context")
    r, c, s, k = _prelude(v)
    if not raw_primitive(r, c, s):
        return _verdict(Case.NOT_PRIMITIVE)
    sq = square10(c) + r * s
    ell = raw_content(r, c, s)
    cert = {"ell": ell, "square": sq}
    if r == 0:
        ch = pair10(c, ctx.ample.free)
        cert["effective"] = {"c1_dot_H": ch}
        if ch <= 0:
            return _verdict(Case.U_RANK0_INEFFECTIVE, **cert)
    case = _common_cases(r, c, s, k, ell, sq, cert, (Case.N1, Case.N2, Case.N3))
    if case is None and sq == -2:
        if not ctx.nodal_cycles:
            cert["note"] = NO_NODAL_DATA
            return _verdict(Case.N4_FAIL, **cert)
        hit = _nodal_match(c, k, r, ctx.nodal_cycles)
        cert["nodal_check"] = {"cycles_tried": len(ctx.nodal_cycles), "matched": hit is not None}
        if not kappa_asserted:
            cert["note"] = KAPPA_NOTE
        if hit is not None:
            i, d = hit
            cert["nodal_cycle"] = {"index": i, "D": list(d.free), "kappaD": d.kappa}
            return _verdict(Case.N4, **cert)
        return _verdict(Case.EMPTY, **cert)
    if "kappa_check" in cert and not kappa_asserted:
        cert["note"] = KAPPA_NOTE
    return _verdict(case or Case.EMPTY, **cert)


def exists(v: MukaiVector, ctx: SurfaceContext | None = None, kappa_asserted=True) -> ExistenceVerdict:
    ctx = ctx or SurfaceContext()
    if ctx.nodal:
        return exists_nodal(v, ctx, kappa_asserted)
    return exists_unnodal(v, ctx, kappa_asserted)


def verify_verdict(v: MukaiVector, ctx: SurfaceContext, verdict: ExistenceVerdict) -> bool:
    """Recompute the verdict from scratch and compare."""
    return exists(v, ctx) == verdict


def exceptional_shadow(v: MukaiVector) -> MukaiVector:
    """Rank-2 vector with the same free c1, kappa shifted by ``r/2 - 1`` and
    ``s`` replaced by ``r s / 2``."""
    r = v.r
    if r <= 0 or r % 2:
        raise PreconditionError(f"exceptional_shadow needs even positive rank, got r={r}")
    sq = square10(v.c1.free) + r * v.s
    if sq != -2:
        raise PreconditionError(f"exceptional_shadow needs <v^2> = -2, got {sq}")
    kappa = (v.kappa - (r // 2 - 1)) % 2
    return MukaiVector(2, NSClass.from_free(v.c1.free, kappa), r * v.s // 2)


def exceptional_eta_test(eta: NSClass, r: int, s: int, ctx: SurfaceContext) -> bool:
    """Whether eta agrees mod 2 with some listed nodal cycle."""
    if not ctx.nodal:
        raise PreconditionError("exceptional_eta_test needs a nodal context")
    if eta.square() + r * s != -2:
        raise PreconditionError(f"(eta^2) + r s = {eta.square() + r * s}, expected -2")
    pe = parity_class(eta)
    return any(parity_class(d) == pe for d in ctx.nodal_cycles)


def unnodal_nonempty_raw(r, c, s, k, ample=(1, 1, 0, 0, 0, 0, 0, 0, 0, 0)):
    """Boolean form of :func:`exists_unnodal` for tight loops (parity assumed)."""
    if not raw_primitive(r, c, s):
        return False
    if r == 0 and (square10(c) < 0 or pair10(c, ample) <= 0):
        return False
    sq = square10(c) + r * s
    ell = math.gcd(r, s, *c)
    if ell == 1:
        return sq >= -1
    return sq >= 2 or (sq == 0 and all(x % 2 == 0 for x in c) and (k - r // 2) % 2 == 0)
