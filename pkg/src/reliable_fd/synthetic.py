"""Small generated datasets with known structure, used by tests and demos."""

from __future__ import annotations

import numpy as np

from .data import Dataset


def planted_dataset(rng: np.random.Generator, d: int, n: int, max_domain: int = 4,
                    y_domain: int = 3, relevant: int = 2, noise: float = 0.2) -> Dataset:
    """Random categorical inputs; Y depends on the first ``relevant`` columns plus label noise."""
    cols = {}
    for i in range(d):
        k = int(rng.integers(1, max_domain + 1))
        cols[f"X{i}"] = rng.integers(0, k, n)
    rel = min(relevant, d)
    y = sum((cols[f"X{i}"] for i in range(rel)), np.zeros(n, dtype=np.int64))
    flip = rng.random(n) < noise
    y = np.where(flip, rng.integers(0, y_domain, n), y) % y_domain
    return Dataset.from_columns(cols, y)


def synthetic_suite(seed: int = 0, count: int = 100, max_d: int = 10,
                    min_n: int = 5, max_n: int = 40) -> list[Dataset]:
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(count):
        d = int(rng.integers(1, max_d + 1))
        n = int(rng.integers(min_n, max_n + 1))
        out.append(planted_dataset(rng, d, n, relevant=int(rng.integers(1, 4)),
                                   noise=float(rng.uniform(0.0, 0.5))))
    return out


def key_gadget(l: int) -> Dataset:
    """4l rows: X alternates a/b, Y(i) = ceil(i/2). X joined with Y is a key."""
    if l < 1:
        raise ValueError("l must be positive")
    i = np.arange(1, 4 * l + 1)
    x = np.where(i % 2 == 1, "a", "b")
    y = (i + 1) // 2
    return Dataset.from_columns({"X": x.tolist()}, y.tolist())


def bit_chain_dataset(bits: int, copies: int = 4, noise_columns: int = 0,
                      seed: int = 0) -> Dataset:
    """Y enumerates 2**bits values; column B_i holds bit i of Y, so each added bit adds information."""
    rng = np.random.default_rng(seed)
    y = np.repeat(np.arange(2 ** bits), copies)
    cols = {f"B{i}": (y >> i) & 1 for i in range(bits)}
    for j in range(noise_columns):
        cols[f"N{j}"] = rng.integers(0, 2, len(y))
    return Dataset.from_columns(cols, y)


def with_target_copy(data: Dataset, name: str = "Ycopy") -> Dataset:
    """The same dataset with the target duplicated as an extra input column."""
    cols = dict(data.columns)
    cols[name] = data.target
    return Dataset(cols, data.target, data.target_name)
