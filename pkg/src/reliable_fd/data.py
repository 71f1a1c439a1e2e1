"""Labelings, datasets, and contingency tables.

Every column is held as a dense integer coding of its categories. Measures and
searches only ever see these codes, never the original cell values.
"""

from __future__ import annotations

import csv
import logging
import math
import os
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

import numpy as np

logger = logging.getLogger(__name__)


class DataError(ValueError):
    """Base class for problems with input data."""


class MissingColumnError(DataError):
    pass


class RaggedRowsError(DataError):
    pass


class EmptyDatasetError(DataError):
    pass


class LengthMismatchError(DataError):
    pass


def _frozen(arr: np.ndarray) -> np.ndarray:
    arr = np.ascontiguousarray(arr, dtype=np.int64)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class Labeling:
    """A column as a map from row index to a dense category id.

    ``categories[c]`` optionally records the original value behind code ``c``.
    """

    codes: np.ndarray
    domain_size: int
    categories: tuple | None = None

    def __post_init__(self):
        codes = _frozen(self.codes)
        object.__setattr__(self, "codes", codes)
        if codes.ndim != 1:
            raise ValueError("codes must be one-dimensional")
        if len(codes) == 0:
            if self.domain_size != 0:
                raise ValueError("empty labeling must have domain_size 0")
            return
        if codes.min() < 0 or codes.max() >= self.domain_size:
            raise ValueError("codes out of range [0, domain_size)")
        if np.count_nonzero(np.bincount(codes, minlength=self.domain_size)) != self.domain_size:
            raise ValueError("codes are not dense")
        if self.categories is not None and len(self.categories) != self.domain_size:
            raise ValueError("categories must have one entry per code")

    def __len__(self) -> int:
        return len(self.codes)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Labeling):
            return NotImplemented
        return self.domain_size == other.domain_size and np.array_equal(self.codes, other.codes)

    def __hash__(self):
        return hash((self.domain_size, self.codes.tobytes()))

    def counts(self) -> np.ndarray:
        return np.bincount(self.codes, minlength=self.domain_size)

    def values(self) -> list:
        """Original cell values (codes if no categories are recorded)."""
        if self.categories is None:
            return self.codes.tolist()
        return [self.categories[c] for c in self.codes]

    @classmethod
    def from_values(cls, values: Iterable) -> "Labeling":
        """Code arbitrary hashable values by order of first occurrence."""
        mapping: dict = {}
        codes = []
        for v in values:
            codes.append(mapping.setdefault(v, len(mapping)))
        return cls(np.asarray(codes, dtype=np.int64), len(mapping), tuple(mapping))

    @classmethod
    def from_codes(cls, codes: Sequence[int]) -> "Labeling":
        """Re-densify arbitrary integer codes by first occurrence."""
        codes = np.asarray(codes, dtype=np.int64)
        return _densify(codes)


def constant_labeling(n: int) -> Labeling:
    """The labeling of the empty attribute set."""
    return Labeling(np.zeros(n, dtype=np.int64), 1 if n > 0 else 0)


def _densify(raw: np.ndarray) -> Labeling:
    if len(raw) == 0:
        return Labeling(raw, 0)
    uniq, first, inverse = np.unique(raw, return_index=True, return_inverse=True)
    # np.unique sorts by value; reorder so codes follow first occurrence.
    order = np.argsort(first, kind="stable")
    rank = np.empty_like(order)
    rank[order] = np.arange(len(order))
    return Labeling(rank[inverse.ravel()], len(uniq))


@dataclass(frozen=True, eq=False)
class Dataset:
    """Named input labelings plus one designated target labeling."""

    columns: Mapping[str, Labeling]
    target: Labeling
    target_name: str = "Y"

    def __post_init__(self):
        cols = dict(self.columns)
        object.__setattr__(self, "columns", cols)
        n = len(self.target)
        for name, lab in cols.items():
            if len(lab) != n:
                raise LengthMismatchError(
                    f"column {name!r} has {len(lab)} rows, target has {n}"
                )
        if self.target_name in cols:
            raise DataError(f"target {self.target_name!r} also listed as an input column")

    @property
    def n(self) -> int:
        return len(self.target)

    @property
    def column_names(self) -> list[str]:
        return list(self.columns)

    @property
    def d(self) -> int:
        return len(self.columns)

    def labeling(self, key: int | str) -> Labeling:
        if isinstance(key, str):
            return self.columns[key]
        return self.columns[self.column_names[key]]

    def joint(self, keys: Iterable[int | str]) -> Labeling:
        """Joint labeling of a set of columns; the constant labeling for the empty set."""
        parts = [self.labeling(k) for k in keys]
        if not parts:
            return constant_labeling(self.n)
        return joint_labeling(parts)

    def rows(self) -> list[list]:
        cols = [lab.values() for lab in self.columns.values()] + [self.target.values()]
        return [list(r) for r in zip(*cols)]

    def to_csv(self, path: str | os.PathLike) -> None:
        with open(path, "w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(self.column_names + [self.target_name])
            writer.writerows(self.rows())

    @classmethod
    def from_columns(cls, columns: Mapping[str, Sequence], target: Sequence,
                     target_name: str = "Y") -> "Dataset":
        """Build a dataset from raw categorical values, coding by first occurrence."""
        return cls(
            {name: Labeling.from_values(vals) for name, vals in columns.items()},
            Labeling.from_values(target),
            target_name,
        )


@dataclass(frozen=True, eq=False)
class ContingencyTable:
    """Joint counts of a candidate labeling (rows) against the target (columns)."""

    joint_counts: np.ndarray
    row_marginals: np.ndarray = field(init=False)
    col_marginals: np.ndarray = field(init=False)
    n: int = field(init=False)

    def __post_init__(self):
        c = np.asarray(self.joint_counts, dtype=np.int64)
        if c.ndim != 2:
            raise ValueError("joint_counts must be a matrix")
        if (c < 0).any():
            raise ValueError("negative counts")
        c = c[c.sum(axis=1) > 0][:, c.sum(axis=0) > 0]
        c = _frozen(c)
        object.__setattr__(self, "joint_counts", c)
        object.__setattr__(self, "row_marginals", _frozen(c.sum(axis=1)))
        object.__setattr__(self, "col_marginals", _frozen(c.sum(axis=0)))
        object.__setattr__(self, "n", int(c.sum()))

    @property
    def shape(self) -> tuple[int, int]:
        return self.joint_counts.shape

    def nonzero_cells(self) -> np.ndarray:
        """Non-zero cell counts, row-major; these are the marginals of X joined with Y."""
        c = self.joint_counts
        return c[c > 0]


def joint_labeling(parts: Sequence[Labeling]) -> Labeling:
    """Vector-valued labeling of several parts, re-coded densely by first occurrence."""
    parts = list(parts)
    if not parts:
        raise ValueError("joint_labeling needs at least one part; use constant_labeling for the empty set")
    n = len(parts[0])
    if any(len(p) != n for p in parts):
        raise LengthMismatchError("labelings differ in length")
    acc = parts[0]
    for p in parts[1:]:
        acc = refine(acc, p)
    if len(parts) == 1:
        return _densify(acc.codes)
    return acc


def refine(x: Labeling, z: Labeling) -> Labeling:
    """Joint labeling of exactly two parts."""
    if len(x) != len(z):
        raise LengthMismatchError("labelings differ in length")
    return _densify(x.codes * max(z.domain_size, 1) + z.codes)


def contingency(x: Labeling, y: Labeling) -> ContingencyTable:
    if len(x) != len(y):
        raise LengthMismatchError("labelings differ in length")
    r, c = x.domain_size, y.domain_size
    flat = np.bincount(x.codes * c + y.codes, minlength=r * c)
    return ContingencyTable(flat.reshape(r, c))


def is_specialization(a: Labeling, b: Labeling) -> bool:
    """True iff every class of ``b`` lies inside a single class of ``a``."""
    if len(a) != len(b):
        raise LengthMismatchError("labelings differ in length")
    if len(a) == 0:
        return True
    t = contingency(b, a).joint_counts
    return bool(((t > 0).sum(axis=1) == 1).all())


def discretize_equal_frequency(values: Sequence[float], bins: int) -> Labeling:
    """Equal-frequency binning into at most ``bins`` ordered codes.

    Cut points are the ceil(i*n/bins)-th order statistics for i = 1..bins-1.
    A value equal to a cut point falls in the lower bin, so ties never split.
    """
    x = np.asarray(values, dtype=float)
    if x.size == 0:
        raise ValueError("cannot discretize an empty sequence")
    if bins < 1:
        raise ValueError("bins must be positive")
    n = x.size
    s = np.sort(x)
    idx = [max(-(-i * n // bins) - 1, 0) for i in range(1, bins)]
    cuts = np.unique(s[idx]) if idx else np.empty(0)
    cuts = cuts[cuts < s[-1]]
    raw = np.searchsorted(cuts, x, side="left")
    uniq, codes = np.unique(raw, return_inverse=True)
    lo = [-math.inf] + cuts.tolist()
    hi = cuts.tolist() + [math.inf]
    cats = tuple(f"({lo[k]:g}, {hi[k]:g}]" for k in uniq)
    return Labeling(codes.ravel(), len(uniq), cats)


def _is_number(cell: str) -> bool:
    try:
        float(cell)
    except ValueError:
        return False
    return True


def load_csv(path: str | os.PathLike, target_name: str, bins: int = 5) -> Dataset:
    """Read a headed CSV file into a Dataset.

    Numeric columns (every cell parses as a real) are discretized into ``bins``
    equal-frequency bins; all other columns are coded by first occurrence.
    Rows with an empty cell are dropped.
    """
    if not os.path.exists(path):
        raise FileNotFoundError(f"no such file: {path}")
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        try:
            header = [h.strip() for h in next(reader)]
        except StopIteration:
            raise EmptyDatasetError(f"{path}: file is empty") from None
        rows = []
        for lineno, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != len(header):
                raise RaggedRowsError(
                    f"{path}:{lineno}: expected {len(header)} fields, got {len(row)}"
                )
            rows.append([c.strip() for c in row])
    if len(set(header)) != len(header):
        raise DataError(f"{path}: duplicate column names")
    if target_name not in header:
        raise MissingColumnError(f"{path}: target column {target_name!r} not found")
    kept = [r for r in rows if all(c != "" for c in r)]
    if len(kept) < len(rows):
        logger.warning("%s: dropped %d rows with missing values", path, len(rows) - len(kept))
    if not kept:
        raise EmptyDatasetError(f"{path}: no data rows")

    labelings = {}
    for j, name in enumerate(header):
        cells = [r[j] for r in kept]
        if all(_is_number(c) for c in cells):
            labelings[name] = discretize_equal_frequency([float(c) for c in cells], bins)
        else:
            labelings[name] = Labeling.from_values(cells)
    target = labelings.pop(target_name)
    return Dataset(labelings, target, target_name)
