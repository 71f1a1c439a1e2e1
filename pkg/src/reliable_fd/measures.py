"""Entropy, mutual information and the permutation-model correction term.

All quantities are in bits. The correction term ``m0`` is the expected mutual
information between X and a uniformly random permutation of Y; it depends
only on the marginal counts of the table.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

import numpy as np

from .data import ContingencyTable, Labeling, LengthMismatchError, contingency

LOG2E = 1.0 / math.log(2.0)
EXACT_ORACLE_MAX_N = 8


def entropy(counts: Sequence[int], n: int | None = None) -> float:
    """Shannon entropy in bits of a count vector; zero counts contribute nothing."""
    c = np.asarray(counts, dtype=np.int64)
    c = c[c > 0]
    if n is None:
        n = int(c.sum())
    if n <= 0:
        return 0.0
    p = c / n
    h = -float(np.sum(p * np.log2(p)))
    return h if h > 0.0 else 0.0


def conditional_entropy(t: ContingencyTable) -> float:
    """H(Y | X) from a table with X on rows and Y on columns."""
    return float(sum(a / t.n * entropy(row, a) for row, a in zip(t.joint_counts, t.row_marginals)))


def mutual_information(t: ContingencyTable) -> float:
    c = t.joint_counts
    if c.size == 0 or t.n == 0:
        return 0.0
    n = t.n
    i, j = np.nonzero(c)
    cij = c[i, j].astype(float)
    expected = t.row_marginals[i].astype(float) * t.col_marginals[j]
    mi = float(np.sum(cij / n * np.log2(cij * n / expected)))
    return mi if mi > 0.0 else 0.0


def fraction_of_information(t: ContingencyTable) -> float:
    """Mutual information normalised by H(Y); 0 for a constant target."""
    hy = entropy(t.col_marginals, t.n)
    if hy == 0.0:
        return 0.0
    return min(mutual_information(t) / hy, 1.0)


@lru_cache(maxsize=1 << 16)
def _row_contribution(a: int, b: tuple[int, ...], n: int) -> float:
    """Sum over the target's columns of the expected contribution of one row with marginal ``a``."""
    total = np.longdouble(0.0)
    lgn = math.lgamma(n + 1)
    for bj in b:
        kmin = max(1, a + bj - n)
        kmax = min(a, bj)
        if kmax < kmin:
            continue
        # log P(k = kmin) of the hypergeometric, then the ratio recurrence upward
        log_p0 = (
            math.lgamma(bj + 1) - math.lgamma(kmin + 1) - math.lgamma(bj - kmin + 1)
            + math.lgamma(n - bj + 1) - math.lgamma(a - kmin + 1) - math.lgamma(n - bj - a + kmin + 1)
            - (lgn - math.lgamma(a + 1) - math.lgamma(n - a + 1))
        )
        k = np.arange(kmin, kmax + 1, dtype=np.longdouble)
        log_ratio = np.log((a - k[:-1]) * (bj - k[:-1]) / ((k[:-1] + 1) * (n - a - bj + k[:-1] + 1)))
        log_p = np.longdouble(log_p0) + np.concatenate(([np.longdouble(0.0)], np.cumsum(log_ratio)))
        p = np.exp(log_p)
        total += np.sum(p * (k / n) * np.log(k * n / (np.longdouble(a) * bj)))
    return float(total * np.longdouble(LOG2E))


def expected_mi_from_marginals(a: Sequence[int], b: Sequence[int], n: int | None = None) -> float:
    """Expected mutual information (bits) under the permutation model for fixed marginals.

    Rows sharing the same marginal contribute identically, so each distinct
    row marginal is evaluated once.
    """
    a = np.asarray(a, dtype=np.int64)
    a = a[a > 0]
    b = np.asarray(b, dtype=np.int64)
    b = b[b > 0]
    if n is None:
        n = int(b.sum())
    if len(a) <= 1 or len(b) <= 1:
        return 0.0
    if len(a) == n:
        # every permutation of Y is fully determined by a key
        return entropy(b, n)
    bt = tuple(int(v) for v in b)
    values, mult = np.unique(a, return_counts=True)
    m0 = math.fsum(int(m) * _row_contribution(int(v), bt, n) for v, m in zip(values, mult))
    return max(m0, 0.0)


def expected_mi_permutation(t: ContingencyTable) -> float:
    return expected_mi_from_marginals(t.row_marginals, t.col_marginals, t.n)


def m0_upper_bound(r: int, c: int, n: int) -> float:
    """Closed-form upper bound on the permutation-model expected MI for r x c tables."""
    if r < 1 or c < 1 or n < 2:
        raise ValueError("need r, c >= 1 and n >= 2")
    return math.log2((n + r * c - r - c) / (n - 1))


@dataclass(frozen=True)
class ScoreBundle:
    h_y: float
    mi: float
    fraction: float
    m0: float
    b0: float
    f0: float

    def as_dict(self) -> dict:
        return dict(h_y=self.h_y, mi=self.mi, fraction=self.fraction, m0=self.m0, b0=self.b0, f0=self.f0)


def score_bundle(t: ContingencyTable) -> ScoreBundle:
    """All scores of one candidate; the reliable fraction ``f0`` is fraction minus b0."""
    h_y = entropy(t.col_marginals, t.n)
    mi = mutual_information(t)
    m0 = expected_mi_permutation(t)
    if h_y == 0.0:
        return ScoreBundle(0.0, mi, 0.0, m0, 0.0, 0.0)
    fraction = min(mi / h_y, 1.0)
    b0 = m0 / h_y
    return ScoreBundle(h_y, mi, fraction, m0, b0, fraction - b0)


def reliable_fraction(t: ContingencyTable) -> float:
    return score_bundle(t).f0


def _mi_of_permuted(x: Labeling, y: Labeling, perms: np.ndarray) -> np.ndarray:
    """Mutual information of x against y[perm] for every row of ``perms``."""
    n = len(x)
    r, c = x.domain_size, y.domain_size
    yp = y.codes[perms]
    cells = x.codes[None, :] * c + yp
    offs = np.arange(len(perms))[:, None] * (r * c)
    counts = np.bincount((cells + offs).ravel(), minlength=len(perms) * r * c)
    counts = counts.reshape(len(perms), r, c).astype(float)
    a = np.bincount(x.codes, minlength=r).astype(float)
    b = np.bincount(y.codes, minlength=c).astype(float)
    expected = a[:, None] * b[None, :]
    with np.errstate(divide="ignore", invalid="ignore"):
        terms = np.where(counts > 0, counts / n * np.log2(counts * n / expected), 0.0)
    return terms.sum(axis=(1, 2))


def oracle_expected_mi(x: Labeling, y: Labeling, mode: str = "exact",
                       samples: int = 10_000, seed: int | None = 0,
                       return_stderr: bool = False):
    """Average of I(x; y_sigma) over permutations sigma, by brute force.

    ``mode="exact"`` enumerates all n! permutations (n <= 8). ``mode="monte_carlo"``
    averages ``samples`` uniformly random permutations drawn with ``seed``.
    """
    if len(x) != len(y):
        raise LengthMismatchError("labelings differ in length")
    n = len(x)
    if mode == "exact":
        if n > EXACT_ORACLE_MAX_N:
            raise ValueError(f"exact oracle limited to n <= {EXACT_ORACLE_MAX_N}, got {n}")
        perms = np.array(list(itertools.permutations(range(n))), dtype=np.int64).reshape(-1, n)
        vals = _mi_of_permuted(x, y, perms)
        mean, se = math.fsum(vals) / len(vals), 0.0
    elif mode == "monte_carlo":
        if samples < 1:
            raise ValueError("samples must be >= 1")
        rng = np.random.default_rng(seed)
        chunks = []
        for start in range(0, samples, 4096):
            m = min(4096, samples - start)
            perms = rng.permuted(np.tile(np.arange(n), (m, 1)), axis=1)
            chunks.append(_mi_of_permuted(x, y, perms))
        vals = np.concatenate(chunks)
        mean = float(vals.mean())
        se = float(vals.std(ddof=1) / math.sqrt(len(vals))) if len(vals) > 1 else math.inf
    else:
        raise ValueError(f"unknown mode {mode!r}")
    return (mean, se) if return_stderr else mean


def score_sets(x: Labeling, y: Labeling) -> ScoreBundle:
    """Convenience wrapper: score_bundle of the contingency table of x and y."""
    return score_bundle(contingency(x, y))
