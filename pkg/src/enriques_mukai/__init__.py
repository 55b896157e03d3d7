"""Exact Mukai-lattice computations for Enriques surfaces.

Lattice arithmetic on U + E8(-1), isometry moves with replayable traces,
reduction to rank-2 and rank-1 canonical forms, and non-emptiness criteria for
moduli of stable sheaves.
"""

from .config import CensusBounds, ReductionConfig
from .errors import (
    IntegerOverflowError,
    InternalConsistencyError,
    InvalidInputError,
    MukaiError,
    PreconditionError,
    SearchBoundExceeded,
    StepCapExceeded,
    TraceReplayError,
    UnreachableTarget,
)
from .existence import (
    Case,
    ExistenceVerdict,
    exceptional_eta_test,
    exceptional_shadow,
    exists,
    exists_nodal,
    exists_unnodal,
)
from .lattice import (
    F,
    K_X,
    SIGMA,
    MukaiVector,
    NSClass,
    SurfaceContext,
    alpha,
    central_charge,
    classify_content,
    content,
    is_primitive,
    mukai_pairing,
    mukai_square,
    ns_pairing,
)
from .moves import Move, MoveTrace, elliptic_shadow, hyp_change, reflect, replay, twist
from .reduction import CanonicalForm, land_rank2, normalize_lemma1, reduce, reduce_even, reduce_odd

__version__ = "0.1.0"
