"""Admissible bounding functions for the reliable fraction of information.

``f_mon`` assumes full information about Y can be reached without any growth
of the correction term. ``f_spc`` charges the correction term of X joined with
Y, the cheapest specialization that reaches full information, and is never
larger than ``f_mon``.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .data import ContingencyTable
from .measures import entropy, expected_mi_from_marginals

TOL = 1e-12


class BoundKind(str, Enum):
    MON = "mon"
    SPC = "spc"
    STAGED = "staged"


def _clamp(v: float) -> float:
    return min(max(v, 0.0), 1.0)


def f_mon(t: ContingencyTable) -> float:
    h_y = entropy(t.col_marginals, t.n)
    if h_y == 0.0:
        return 0.0
    return _clamp(1.0 - expected_mi_from_marginals(t.row_marginals, t.col_marginals, t.n) / h_y)


def f_spc(t: ContingencyTable) -> float:
    # the non-zero joint cells are exactly the marginal counts of X joined with Y
    h_y = entropy(t.col_marginals, t.n)
    if h_y == 0.0:
        return 0.0
    return _clamp(1.0 - expected_mi_from_marginals(t.nonzero_cells(), t.col_marginals, t.n) / h_y)


def delta_gap(t: ContingencyTable) -> float:
    return f_mon(t) - f_spc(t)


@dataclass
class StagedBound:
    """Outcome of a staged pruning check; ``spc`` is None when it was never evaluated."""

    prune: bool
    mon: float
    spc: float | None = None

    @property
    def value(self) -> float:
        return self.mon if self.spc is None else self.spc


def staged_check(t: ContingencyTable, alpha: float, incumbent: float) -> StagedBound:
    if not 0.0 < alpha <= 1.0:
        raise ValueError("alpha must lie in (0, 1]")
    mon = f_mon(t)
    if not alpha * mon > incumbent + TOL:
        return StagedBound(True, mon)
    spc = f_spc(t)
    return StagedBound(not alpha * spc > incumbent + TOL, mon, spc)


def staged_bound_prunes(t: ContingencyTable, alpha: float, incumbent: float) -> bool:
    """Prune test that only pays for ``f_spc`` when ``f_mon`` fails to prune."""
    return staged_check(t, alpha, incumbent).prune


def bound_value(kind: BoundKind | str, t: ContingencyTable) -> float:
    kind = BoundKind(kind)
    if kind is BoundKind.MON:
        return f_mon(t)
    return f_spc(t)
