from __future__ import annotations

from typing import Sequence

import numpy as np


def cluster_eigenvalues(values: Sequence[float], rtol: float, atol: float = 0.0) -> list[list[int]]:
    """
    Maximal runs of sorted values whose consecutive gaps are within
    rtol·max(|a|, |b|) + atol. Returns index lists into `values`.

    A relative gap next to 0 is only closed by atol, so an exact zero stays
    a singleton unless atol says otherwise.
    """
    array = np.asarray(values, dtype=np.float64)
    if array.size == 0:
        return []
    clusters: list[list[int]] = [[0]]
    for i in range(1, array.size):
        a, b = array[i - 1], array[i]
        if abs(b - a) <= rtol * max(abs(a), abs(b)) + atol:
            clusters[-1].append(i)
        else:
            clusters.append([i])
    return clusters


def multiplicities(values: Sequence[float], rtol: float, atol: float = 0.0) -> list[int]:
    """Cluster size for each entry of `values`."""
    sizes = [0] * len(values)
    for cluster in cluster_eigenvalues(values, rtol, atol):
        for i in cluster:
            sizes[i] = len(cluster)
    return sizes
