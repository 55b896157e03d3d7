"""Tunable knobs, kept in plain dataclasses so experiments can record them."""

from __future__ import annotations

from dataclasses import dataclass

DEFAULT_SEARCH_RADIUS = 6
DEFAULT_STEP_CAP = 64


@dataclass(frozen=True)
class ReductionConfig:
    """Limits for the E8 searches and for reduction chains.

    ``search_radius`` bounds the sup-norm of every E8 candidate tried;
    ``step_cap`` bounds the number of moves in one reduction trace.
    """

    search_radius: int = DEFAULT_SEARCH_RADIUS
    step_cap: int = DEFAULT_STEP_CAP

    def __post_init__(self):
        if self.search_radius < 0:
            raise ValueError("search_radius must be non-negative")
        if self.step_cap < 0:
            raise ValueError("step_cap must be non-negative")


@dataclass(frozen=True)
class CensusBounds:
    """Box of Mukai vectors: ``0 <= r <= r_max``, ``|s| <= s_max``, ``|c_i| <= coeff_bound``."""

    r_max: int
    s_max: int
    coeff_bound: int

    def __post_init__(self):
        if min(self.r_max, self.s_max, self.coeff_bound) < 0:
            raise ValueError("census bounds must be non-negative")
