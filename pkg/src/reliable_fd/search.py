"""Subset search maximizing the reliable fraction of information.

Three optimizers share one scoring path:

* :func:`opus` - branch-and-bound with pruning propagated to siblings,
  returning a set within factor ``alpha`` of the optimum;
* :func:`greedy` - forward selection with the bound as an early stop;
* :func:`exhaustive` - scores every subset, used as a reference.
"""

from __future__ import annotations

import heapq
import logging
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field, replace
from typing import Iterable, Sequence

from .bounds import TOL, BoundKind, f_mon, f_spc, staged_check
from .data import ContingencyTable, Dataset, Labeling, constant_labeling, contingency, refine
from .measures import entropy, score_bundle

logger = logging.getLogger(__name__)

THREADS_ENV = "RELIABLE_FD_THREADS"
EXHAUSTIVE_MAX_D = 20


def default_threads() -> int:
    try:
        return max(int(os.environ.get(THREADS_ENV, "1")), 1)
    except ValueError:
        return 1


@dataclass
class SearchConfig:
    alpha: float = 1.0
    bound_kind: BoundKind = BoundKind.STAGED
    node_budget: int | None = None
    time_budget: float | None = None
    threads: int = field(default_factory=default_threads)

    def __post_init__(self):
        self.bound_kind = BoundKind(self.bound_kind)
        if not 0.0 < self.alpha <= 1.0:
            raise ValueError(f"alpha must lie in (0, 1], got {self.alpha}")

    def echo(self) -> dict:
        d = asdict(self)
        d["bound_kind"] = self.bound_kind.value
        return d


@dataclass(order=True)
class SearchNode:
    """Queue entry: candidate set, the columns still allowed to extend it, and its bound."""

    sort_key: tuple = field(init=False, repr=False)
    candidate: tuple[int, ...] = field(compare=False)
    augmentations: tuple[int, ...] = field(compare=False)
    bound: float = field(compare=False)
    score: float = field(compare=False)
    labeling: Labeling | None = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if set(self.candidate) & set(self.augmentations):
            raise ValueError("candidate and augmentations overlap")
        # smallest cardinality first, then highest potential, then lexicographic
        self.sort_key = (len(self.candidate), -self.bound, self.candidate)

    @property
    def depth(self) -> int:
        return len(self.candidate)


@dataclass
class DiscoveryResult:
    best_set: tuple[str, ...]
    f0: float
    nodes_explored: int
    wall_time: float
    terminated_early: bool = False
    method: str = ""
    config: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        d = asdict(self)
        d["best_set"] = list(self.best_set)
        return d


def better(f_a: float, set_a: Sequence[int], f_b: float, set_b: Sequence[int]) -> bool:
    """True if candidate a beats b: higher score, then smaller, then lexicographically first."""
    if f_a > f_b + TOL:
        return True
    if f_b > f_a + TOL:
        return False
    if len(set_a) != len(set_b):
        return len(set_a) < len(set_b)
    return tuple(set_a) < tuple(set_b)


class _Scorer:
    """Scores candidate labelings against a fixed target and counts evaluations."""

    def __init__(self, data: Dataset, cfg: SearchConfig, start: float):
        self.data = data
        self.cfg = cfg
        self.start = start
        self.cols = [data.labeling(i) for i in range(data.d)]
        self.y = data.target
        self.h_y = entropy(self.y.counts(), data.n)
        self.nodes = 0
        self.exhausted = False
        self._pool = ThreadPoolExecutor(cfg.threads) if cfg.threads > 1 else None

    def close(self):
        if self._pool is not None:
            self._pool.shutdown()

    def over_budget(self) -> bool:
        cfg = self.cfg
        if cfg.node_budget is not None and self.nodes >= cfg.node_budget:
            self.exhausted = True
        elif cfg.time_budget is not None and time.perf_counter() - self.start >= cfg.time_budget:
            self.exhausted = True
        return self.exhausted

    def _one(self, item: tuple[Labeling, int]):
        lab, z = item
        joint = refine(lab, self.cols[z])
        table = contingency(joint, self.y)
        return joint, table, score_bundle(table).f0

    def refinements(self, lab: Labeling, zs: Sequence[int]):
        """Joint labeling, table and score of ``lab`` extended by each column of ``zs``, in order."""
        items = [(lab, z) for z in zs]
        if self._pool is not None and len(items) > 1:
            out = list(self._pool.map(self._one, items))
        else:
            out = [self._one(it) for it in items]
        self.nodes += len(out)
        return out

    def bound(self, table: ContingencyTable, incumbent: float) -> tuple[bool, float]:
        """(prune?, potential) for a refinement under the configured bound."""
        alpha, kind = self.cfg.alpha, self.cfg.bound_kind
        if kind is BoundKind.STAGED:
            st = staged_check(table, alpha, incumbent)
            return st.prune, st.value
        value = f_mon(table) if kind is BoundKind.MON else f_spc(table)
        return not alpha * value > incumbent + TOL, value


def _finish(data: Dataset, best: tuple[int, ...], nodes: int, start: float,
            early: bool, method: str, config: dict) -> DiscoveryResult:
    f0 = score_bundle(contingency(data.joint(best), data.target)).f0 if best else 0.0
    names = tuple(data.column_names[i] for i in best)
    return DiscoveryResult(names, f0, nodes, time.perf_counter() - start, early, method, config)


def _degenerate(data: Dataset) -> bool:
    return data.d == 0 or data.n == 0 or data.target.domain_size <= 1


def opus(data: Dataset, cfg: SearchConfig | None = None) -> DiscoveryResult:
    """Branch-and-bound over all column subsets.

    Each popped node is expanded into all its refinements, which update the
    incumbent and are pruned when ``alpha * bound <= incumbent``. Survivors are
    sorted by decreasing bound; the i-th survivor may only be extended by the
    surviving columns ranked after it, so every subset is reached at most once
    and pruned columns vanish from all siblings.
    """
    cfg = cfg or SearchConfig()
    start = time.perf_counter()
    method = f"opus_{cfg.bound_kind.value}"
    if _degenerate(data):
        return _finish(data, (), 0, start, False, method, cfg.echo())

    sc = _Scorer(data, cfg, start)
    best, best_f = (), 0.0
    root = SearchNode((), tuple(range(data.d)), 1.0, 0.0, constant_labeling(data.n))
    queue = [root]
    try:
        while queue:
            if sc.over_budget():
                break
            node = heapq.heappop(queue)
            results = sc.refinements(node.labeling, node.augmentations)
            children = []
            for z, (joint, table, f) in zip(node.augmentations, results):
                cand = tuple(sorted(node.candidate + (z,)))
                children.append((cand, z, joint, table, f))
                if better(f, cand, best_f, best):
                    best, best_f = cand, f
            survivors = []
            for cand, z, joint, table, f in children:
                prune, potential = sc.bound(table, best_f)
                if not prune:
                    survivors.append((potential, cand, z, joint, f))
            survivors.sort(key=lambda s: (-s[0], s[1]))
            order = [s[2] for s in survivors]
            for i, (potential, cand, z, joint, f) in enumerate(survivors):
                aug = tuple(order[i + 1:])
                if aug:
                    heapq.heappush(queue, SearchNode(cand, aug, potential, f, joint))
    finally:
        sc.close()
    return _finish(data, best, sc.nodes, start, sc.exhausted, method, cfg.echo())


def greedy(data: Dataset, use_bound: bool = True,
           bound_kind: BoundKind | str = BoundKind.STAGED,
           cfg: SearchConfig | None = None) -> DiscoveryResult:
    """Forward selection: repeatedly extend the best refinement by one column.

    With ``use_bound`` the loop stops as soon as the bound of the current
    refinement base cannot beat the best set seen so far.
    """
    kind = BoundKind(bound_kind)
    cfg = replace(cfg, bound_kind=kind) if cfg else SearchConfig(bound_kind=kind)
    start = time.perf_counter()
    method = f"greedy_{cfg.bound_kind.value}" if use_bound else "greedy"
    config = dict(cfg.echo(), use_bound=use_bound)
    if _degenerate(data):
        return _finish(data, (), 0, start, False, method, config)

    sc = _Scorer(data, cfg, start)
    base, base_lab, base_table = (), constant_labeling(data.n), None
    best, best_f = (), 0.0
    try:
        while True:
            remaining = [z for z in range(data.d) if z not in base]
            if not remaining:
                break
            if use_bound:
                table = base_table if base_table is not None else contingency(base_lab, sc.y)
                if kind is BoundKind.STAGED:
                    stop = staged_check(table, 1.0, best_f).prune
                else:
                    stop = not (f_mon(table) if kind is BoundKind.MON else f_spc(table)) > best_f + TOL
                if stop:
                    break
            if sc.over_budget():
                break
            results = sc.refinements(base_lab, remaining)
            c_best = None
            for z, (joint, table, f) in zip(remaining, results):
                cand = tuple(sorted(base + (z,)))
                if c_best is None or better(f, cand, c_best[2], c_best[0]):
                    c_best = (cand, joint, f, table)
            base, base_lab, f, base_table = c_best
            if better(f, base, best_f, best):
                best, best_f = base, f
    finally:
        sc.close()
    return _finish(data, best, sc.nodes, start, sc.exhausted, method, config)


def exhaustive(data: Dataset) -> DiscoveryResult:
    """Score all 2^d subsets; ties go to the smaller, then lexicographically first, set."""
    if data.d > EXHAUSTIVE_MAX_D:
        raise ValueError(f"exhaustive search limited to d <= {EXHAUSTIVE_MAX_D}, got {data.d}")
    start = time.perf_counter()
    if _degenerate(data):
        return _finish(data, (), 2 ** data.d, start, False, "exhaustive", {})
    cols = [data.labeling(i) for i in range(data.d)]
    y = data.target
    best, best_f = (), 0.0
    nodes = 1  # the empty set, scored 0 by convention

    stack: list[tuple[tuple[int, ...], Labeling]] = [((), constant_labeling(data.n))]
    while stack:
        cand, lab = stack.pop()
        nxt = cand[-1] + 1 if cand else 0
        for z in range(data.d - 1, nxt - 1, -1):
            joint = refine(lab, cols[z])
            new = cand + (z,)
            f = score_bundle(contingency(joint, y)).f0
            nodes += 1
            if better(f, new, best_f, best):
                best, best_f = new, f
            stack.append((new, joint))
    return _finish(data, best, nodes, start, False, "exhaustive", {})


def all_subset_scores(data: Dataset) -> dict[tuple[int, ...], float]:
    """Reliable fraction of every subset (keys are sorted index tuples)."""
    cols = [data.labeling(i) for i in range(data.d)]
    out = {(): 0.0 if data.target.domain_size <= 1 else score_bundle(
        contingency(constant_labeling(data.n), data.target)).f0}
    stack = [((), constant_labeling(data.n))]
    while stack:
        cand, lab = stack.pop()
        nxt = cand[-1] + 1 if cand else 0
        for z in range(nxt, data.d):
            joint = refine(lab, cols[z])
            out[cand + (z,)] = score_bundle(contingency(joint, data.target)).f0
            stack.append((cand + (z,), joint))
    return out


def indices_of(data: Dataset, names: Iterable[str]) -> tuple[int, ...]:
    pos = {c: i for i, c in enumerate(data.column_names)}
    return tuple(sorted(pos[n] for n in names))
