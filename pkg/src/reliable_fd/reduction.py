"""Set-cover instances turned into datasets whose best attribute set is a minimum cover.

The base construction has ``l = 2n + m + 1`` rows in three regions: the first
``n`` rows tie uncovered universe elements to uncertainty about Y, the next
``n`` rows are all-``a`` rows with a different Y value, and the last ``m + 1``
rows give every chosen set one extra distinct value. Copying the base table
``k`` times shrinks the correction terms until they only break ties between
covers of different size.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .data import Dataset, contingency
from .measures import expected_mi_permutation, mutual_information, score_bundle


class NoCoverError(ValueError):
    pass


@dataclass(frozen=True)
class SetCoverInstance:
    """Universe ``{1..universe_size}`` and a list of subsets of it."""

    universe_size: int
    subsets: tuple[frozenset[int], ...]

    def __post_init__(self):
        subs = tuple(frozenset(int(u) for u in s) for s in self.subsets)
        object.__setattr__(self, "subsets", subs)
        if self.universe_size < 1:
            raise ValueError("universe must be non-empty")
        if not subs:
            raise ValueError("need at least one subset")
        for i, s in enumerate(subs, start=1):
            bad = [u for u in s if not 1 <= u <= self.universe_size]
            if bad:
                raise ValueError(f"subset B{i} has elements outside the universe: {sorted(bad)}")

    @property
    def m(self) -> int:
        return len(self.subsets)

    def covers(self, chosen: Sequence[int]) -> bool:
        """Whether the subsets at 0-based indices ``chosen`` cover the universe."""
        covered = set().union(*(self.subsets[i] for i in chosen)) if chosen else set()
        return len(covered) == self.universe_size

    def covered_count(self, chosen: Sequence[int]) -> int:
        return len(set().union(*(self.subsets[i] for i in chosen))) if chosen else 0


@dataclass(frozen=True)
class ReductionMeta:
    universe_size: int
    num_subsets: int
    l: int
    k: int
    rows: int

    @property
    def regions(self) -> dict[str, tuple[int, int]]:
        """1-based inclusive row ranges of the three regions in the base table."""
        n = self.universe_size
        return {"S1": (1, n), "S2": (n + 1, 2 * n), "S3": (2 * n + 1, self.l)}


def base_size(inst: SetCoverInstance) -> int:
    return 2 * inst.universe_size + inst.m + 1


def copy_count(l: int) -> int:
    return math.ceil(2 * l / math.log(2)) + 1


def tau1_rows(inst: SetCoverInstance) -> list[list[str]]:
    """Symbolic base table, one list ``[X1..Xm, Y]`` per row."""
    n, m = inst.universe_size, inst.m
    l = base_size(inst)
    rows = []
    for j in range(1, l + 1):
        if j <= n:
            y = "a"
            xs = [str(j) if j in b else "a" for b in inst.subsets]
        elif j <= 2 * n:
            y = "b"
            xs = ["a"] * m
        else:
            y = "c"
            xs = ["b" if j == 2 * n + i else "c" for i in range(1, m + 1)]
        rows.append(xs + [y])
    return rows


def _to_dataset(rows: list[list[str]], m: int) -> Dataset:
    cols = {f"X{i + 1}": [r[i] for r in rows] for i in range(m)}
    return Dataset.from_columns(cols, [r[m] for r in rows], "Y")


def tau1(inst: SetCoverInstance) -> Dataset:
    return _to_dataset(tau1_rows(inst), inst.m)


def tau_k(inst: SetCoverInstance, k: int | None = None) -> tuple[Dataset, ReductionMeta]:
    """Base table repeated ``k`` times (default: the smallest k shrinking cover corrections below 2/l)."""
    l = base_size(inst)
    k = copy_count(l) if k is None else k
    if k < 1:
        raise ValueError("k must be positive")
    base = tau1_rows(inst)
    rows = [base[j % l] for j in range(k * l)]
    return _to_dataset(rows, inst.m), ReductionMeta(inst.universe_size, inst.m, l, k, k * l)


def min_set_cover_bruteforce(inst: SetCoverInstance) -> tuple[int, ...]:
    """Smallest cover as sorted 0-based subset indices; lexicographically first among ties."""
    if inst.m > 20:
        raise ValueError("brute force limited to m <= 20")
    for size in range(1, inst.m + 1):
        for combo in itertools.combinations(range(inst.m), size):
            if inst.covers(combo):
                return combo
    raise NoCoverError("the subsets do not cover the universe")


def example_cover_instance() -> SetCoverInstance:
    """Five elements, four subsets; {B1, B2} is the unique minimum cover."""
    return SetCoverInstance(5, (frozenset({1, 3, 4}), frozenset({2, 5}),
                                frozenset({1, 2, 4}), frozenset({1, 5})))


def random_instance(rng: np.random.Generator, universe_size: int, num_subsets: int,
                    density: float = 0.4) -> SetCoverInstance:
    """``num_subsets - 1`` uniform random subsets plus a last one forced to cover what they miss."""
    subs = [frozenset(int(u) for u in np.flatnonzero(rng.random(universe_size) < density) + 1)
            for _ in range(num_subsets)]
    missing = set(range(1, universe_size + 1)).difference(*subs[:-1])
    subs[-1] = subs[-1] | missing
    return SetCoverInstance(universe_size, tuple(subs))


def parse_subsets(spec: str) -> tuple[frozenset[int], ...]:
    """Parse ``"1,3,4;2,5;..."`` into subsets."""
    out = []
    for part in spec.split(";"):
        part = part.strip()
        out.append(frozenset(int(u) for u in part.split(",") if u.strip()) if part else frozenset())
    return tuple(out)


@dataclass
class ReductionReport:
    maximizer: tuple[int, ...]
    maximizer_f0: float
    min_cover: tuple[int, ...]
    is_cover: bool
    is_minimum: bool
    best_cover_f0: float
    best_noncover_f0: float
    max_cover_m0: float
    l: int
    k: int

    @property
    def gap(self) -> float:
        return self.best_cover_f0 - self.best_noncover_f0

    @property
    def ok(self) -> bool:
        return self.is_cover and self.is_minimum and self.max_cover_m0 < 2 / self.l


def verify_reduction(inst: SetCoverInstance, k: int | None = None) -> ReductionReport:
    """Exhaustively maximize the reliable fraction on the copied table and compare with brute-force set cover."""
    if inst.m > 12:
        raise ValueError("verification limited to m <= 12")
    from .search import all_subset_scores, better

    min_cover = min_set_cover_bruteforce(inst)
    data, meta = tau_k(inst, k)
    scores = all_subset_scores(data)
    best, best_f = (), scores[()]
    for s, f in scores.items():
        if better(f, s, best_f, best):
            best, best_f = s, f
    cover_f = [f for s, f in scores.items() if inst.covers(s)]
    noncover_f = [f for s, f in scores.items() if not inst.covers(s)]
    max_m0 = max(
        expected_mi_permutation(contingency(data.joint(s), data.target))
        for s in scores if inst.covers(s)
    )
    return ReductionReport(
        maximizer=best,
        maximizer_f0=best_f,
        min_cover=min_cover,
        is_cover=inst.covers(best),
        is_minimum=inst.covers(best) and len(best) == len(min_cover),
        best_cover_f0=max(cover_f),
        best_noncover_f0=max(noncover_f),
        max_cover_m0=max_m0,
        l=meta.l,
        k=meta.k,
    )


def subset_scores(data: Dataset, chosen: Sequence[int]):
    """Score bundle of the columns at 0-based indices ``chosen``."""
    return score_bundle(contingency(data.joint(chosen), data.target))


def cover_mi_gap(inst: SetCoverInstance) -> float:
    """Smallest drop in mutual information from any cover to any non-cover on the base table."""
    data = tau1(inst)
    mis = {}
    for size in range(inst.m + 1):
        for s in itertools.combinations(range(inst.m), size):
            mis[s] = mutual_information(contingency(data.joint(s), data.target))
    covers = [v for s, v in mis.items() if inst.covers(s)]
    others = [v for s, v in mis.items() if not inst.covers(s)]
    return min(covers) - max(others)


def write_sidecar(path, meta: ReductionMeta, min_cover: Sequence[int] | None, variant: str) -> None:
    lines = {
        "variant": variant,
        "universe_size": meta.universe_size,
        "num_subsets": meta.num_subsets,
        "l": meta.l,
        "k": meta.k if variant == "tauk" else 1,
        "rows": meta.rows,
    }
    for name, (lo, hi) in meta.regions.items():
        lines[name] = f"{lo}-{hi}"
    if min_cover is not None:
        lines["min_cover_size"] = len(min_cover)
        lines["min_cover"] = ",".join(f"X{i + 1}" for i in min_cover)
    with open(path, "w", encoding="utf-8") as fh:
        for key, val in lines.items():
            fh.write(f"{key}={val}\n")


def read_sidecar(path) -> dict[str, str]:
    out = {}
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if line and not line.startswith("#"):
                key, _, val = line.partition("=")
                out[key.strip()] = val.strip()
    return out

