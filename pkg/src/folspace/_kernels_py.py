"""Pure numpy hypercube kernels (fallback for the compiled extension)."""

from __future__ import annotations

import numpy as np


def influence_counts(labels: np.ndarray, n: int) -> np.ndarray:
    """For each coordinate ``i`` (1-based, leftmost bit first) count vertices whose
    label changes when coordinate ``i`` flips."""
    labels = np.ascontiguousarray(labels, dtype=np.int8)
    if labels.shape != (1 << n,):
        raise ValueError("labels must have length 2^n")
    idx = np.arange(1 << n, dtype=np.int64)
    out = np.zeros(n, dtype=np.int64)
    for i in range(n):
        bit = 1 << (n - 1 - i)
        out[i] = np.count_nonzero(labels != labels[idx ^ bit])
    return out


def label_sum(labels: np.ndarray) -> int:
    return int(np.asarray(labels, dtype=np.int64).sum())
