"""Benchmark harness, relative-difference metrics and the dependency-by-chance simulation."""

from __future__ import annotations

import csv
import json
import os
import statistics
from dataclasses import dataclass, field
from typing import Iterable, Mapping

import numpy as np

from .bounds import BoundKind
from .data import Dataset, Labeling, contingency, load_csv
from .measures import score_bundle
from .search import DiscoveryResult, SearchConfig, exhaustive, greedy, opus

METHODS = (
    "opus_mon", "opus_spc", "opus_staged",
    "greedy", "greedy_mon", "greedy_spc", "greedy_staged",
    "exhaustive",
)
BENCH_HEADER = ["dataset", "method", "alpha", "time_s", "nodes", "f0"]


def relative_difference(a: float, b: float) -> float:
    """(a - b) / max(a, b); 0 when both are 0. Positive means B is better (smaller)."""
    m = max(a, b)
    if m <= 0:
        return 0.0
    return (a - b) / m


rrd = relative_difference
rnd = relative_difference


def run_method(data: Dataset, method: str, alpha: float = 1.0, **cfg_kw) -> DiscoveryResult:
    if method not in METHODS:
        raise ValueError(f"unknown method {method!r}; choose from {', '.join(METHODS)}")
    if method == "exhaustive":
        return exhaustive(data)
    family, _, kind = method.partition("_")
    if family == "opus":
        return opus(data, SearchConfig(alpha=alpha, bound_kind=kind, **cfg_kw))
    if not kind:
        return greedy(data, use_bound=False, cfg=SearchConfig(**cfg_kw))
    return greedy(data, use_bound=True, bound_kind=BoundKind(kind), cfg=SearchConfig(**cfg_kw))


@dataclass
class BenchRecord:
    dataset: str
    method: str
    alpha: float
    wall_time: float
    nodes: int
    f0: float

    def __post_init__(self):
        if self.wall_time < 0 or self.nodes < 0 or self.alpha < 0:
            raise ValueError("bench numerics must be non-negative")

    def row(self) -> list:
        return [self.dataset, self.method, f"{self.alpha:g}", f"{self.wall_time:.6f}",
                self.nodes, f"{self.f0:.6f}"]


@dataclass
class RrdReport:
    method_a: str
    method_b: str
    rrd: dict[str, float] = field(default_factory=dict)
    rnd: dict[str, float] = field(default_factory=dict)

    def __post_init__(self):
        for v in list(self.rrd.values()) + list(self.rnd.values()):
            if abs(v) > 1:
                raise ValueError("relative differences must lie in [-1, 1]")

    def table(self) -> str:
        lines = [f"{'dataset':<24} {'rrd':>8} {'rnd':>8}   (A={self.method_a}, B={self.method_b})"]
        for ds in self.rrd:
            lines.append(f"{ds:<24} {self.rrd[ds]:>8.3f} {self.rnd[ds]:>8.3f}")
        return "\n".join(lines)


def compare(records: Iterable[BenchRecord], method_a: str, method_b: str) -> RrdReport:
    """Per-dataset rrd/rnd from mean wall time and mean node count over repetitions."""
    by = {}
    for r in records:
        by.setdefault((r.dataset, r.method), []).append(r)
    report = RrdReport(method_a, method_b)
    datasets = list(dict.fromkeys(ds for ds, _ in by))
    for ds in datasets:
        ra, rb = by.get((ds, method_a)), by.get((ds, method_b))
        if not ra or not rb:
            continue
        ta = statistics.fmean(r.wall_time for r in ra)
        tb = statistics.fmean(r.wall_time for r in rb)
        na = statistics.fmean(r.nodes for r in ra)
        nb = statistics.fmean(r.nodes for r in rb)
        report.rrd[ds] = relative_difference(ta, tb)
        report.rnd[ds] = relative_difference(na, nb)
    return report


def bench(datasets: Mapping[str, tuple[Dataset, float]], method_a: str, method_b: str,
          repetitions: int = 3) -> tuple[list[BenchRecord], RrdReport]:
    """Run two methods on every dataset ``repetitions`` times, sequentially."""
    if repetitions < 1:
        raise ValueError("repetitions must be >= 1")
    records = []
    for ds_id, (data, alpha) in datasets.items():
        for method in (method_a, method_b):
            for _ in range(repetitions):
                res = run_method(data, method, alpha)
                records.append(BenchRecord(ds_id, method, alpha, res.wall_time,
                                           res.nodes_explored, res.f0))
    return records, compare(records, method_a, method_b)


class ManifestError(ValueError):
    pass


def load_manifest(path: str | os.PathLike) -> dict[str, tuple[Dataset, float]]:
    """Read a JSON list of ``{"id", "path", "target", "alpha"?, "bins"?}`` entries.

    Relative dataset paths are resolved against the manifest's directory.
    """
    with open(path, encoding="utf-8") as fh:
        try:
            entries = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ManifestError(f"{path}: invalid JSON: {exc}") from exc
    if not isinstance(entries, list):
        raise ManifestError(f"{path}: expected a list of dataset entries")
    base = os.path.dirname(os.path.abspath(path))
    out = {}
    for e in entries:
        try:
            ds_id, ds_path, target = e["id"], e["path"], e["target"]
        except (KeyError, TypeError):
            raise ManifestError(f"{path}: entry {e!r} needs id, path and target") from None
        full = ds_path if os.path.isabs(ds_path) else os.path.join(base, ds_path)
        try:
            data = load_csv(full, target, int(e.get("bins", 5)))
        except (OSError, ValueError) as exc:
            raise ManifestError(f"dataset {ds_id!r}: {exc}") from exc
        out[ds_id] = (data, float(e.get("alpha", 1.0)))
    return out


def write_bench_csv(records: Iterable[BenchRecord], path: str | os.PathLike) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(BENCH_HEADER)
        for r in records:
            w.writerow(r.row())


def doubling_domains(lo: int = 4, hi: int = 2048) -> list[int]:
    out, v = [], lo
    while v <= hi:
        out.append(v)
        v *= 2
    return out


def figure1(n: int = 1000, y_domain: int = 4, domains: Iterable[int] | None = None,
            trials: int = 20, seed: int = 0) -> list[tuple[int, float, float]]:
    """Mean naive and corrected fraction of information for X independent of Y.

    For every domain size, X and Y are drawn uniformly and independently
    ``trials`` times. Returns ``(domain, mean_fraction, mean_f0)`` rows.
    """
    if n < 2 or y_domain < 1 or trials < 1:
        raise ValueError("n >= 2, y_domain >= 1 and trials >= 1 required")
    domains = doubling_domains() if domains is None else list(domains)
    rng = np.random.default_rng(seed)
    rows = []
    for k in domains:
        fs, f0s = [], []
        for _ in range(trials):
            x = Labeling.from_codes(rng.integers(0, k, n))
            y = Labeling.from_codes(rng.integers(0, y_domain, n))
            s = score_bundle(contingency(x, y))
            fs.append(s.fraction)
            f0s.append(s.f0)
        rows.append((k, statistics.fmean(fs), statistics.fmean(f0s)))
    return rows


def write_figure1_csv(rows, dest) -> None:
    """Write figure-1 rows to a path or an open text stream."""
    if hasattr(dest, "write"):
        _write_figure1(rows, dest)
        return
    with open(dest, "w", newline="", encoding="utf-8") as fh:
        _write_figure1(rows, fh)


def _write_figure1(rows, fh) -> None:
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(["domain", "mean_fraction", "mean_f0"])
    for k, f, f0 in rows:
        w.writerow([k, f"{f:.6f}", f"{f0:.6f}"])
