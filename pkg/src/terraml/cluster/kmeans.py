"""Seeded k-means (k-means++ init, Lloyd iterations) and an agreement score.

Points are processed in sample-id order internally, so the result is
invariant (up to floating noise) under permutation of the input rows as long
as ids travel with them. Empty clusters are repaired by reseeding the
centroid onto the point currently farthest from its assigned centroid.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import InvalidParams, LengthMismatch
from ..kernels import pairwise_sqdist_argmin
from ..seeding import derive_rng


@dataclass(frozen=True)
class ClusterAssignment:
    labels: np.ndarray  # (N,) ints in [0, k), aligned with the input rows
    centroids: np.ndarray  # (k, D)
    inertia: float
    n_iter: int
    inertia_history: tuple[float, ...]  # one entry per Lloyd iteration


def _plus_plus_init(pts: np.ndarray, k: int, rng: np.random.Generator) -> np.ndarray:
    n = len(pts)
    centroids = np.empty((k, pts.shape[1]))
    first = int(rng.integers(n))
    centroids[0] = pts[first]
    d2 = ((pts - centroids[0]) ** 2).sum(axis=1)
    for j in range(1, k):
        total = d2.sum()
        if total <= 0.0:
            idx = int(rng.integers(n))
        else:
            idx = int(rng.choice(n, p=d2 / total))
        centroids[j] = pts[idx]
        d2 = np.minimum(d2, ((pts - centroids[j]) ** 2).sum(axis=1))
    return centroids


def kmeans(
    points, k: int, seed: int, max_iter: int = 100, ids=None, n_init: int = 1
) -> ClusterAssignment:
    points = np.ascontiguousarray(points, dtype=np.float64)
    if points.ndim != 2:
        raise InvalidParams(f"points must be N×D, got shape {points.shape}")
    n = len(points)
    if not 1 <= k <= n:
        raise InvalidParams(f"k must be in [1, {n}], got {k}")
    if max_iter < 1 or n_init < 1:
        raise InvalidParams(f"max_iter and n_init must be >= 1, got {max_iter}, {n_init}")
    if not np.isfinite(points).all():
        raise InvalidParams("points must be finite")

    best = None
    for restart in range(n_init):
        result = _kmeans_once(points, k, seed, max_iter, ids, restart)
        if best is None or result.inertia < best.inertia:
            best = result
    return best


def _kmeans_once(points, k, seed, max_iter, ids, restart) -> ClusterAssignment:
    n = len(points)
    if ids is None:
        order = np.arange(n)
    else:
        if len(ids) != n:
            raise LengthMismatch(f"{len(ids)} ids for {n} points")
        order = np.argsort(np.asarray(ids), kind="stable")
    pts = np.ascontiguousarray(points[order])

    centroids = _plus_plus_init(pts, k, derive_rng(seed, "kmeanspp", restart))
    labels = np.full(n, -1, dtype=np.int64)
    history: list[float] = []
    n_iter = 0
    for _ in range(max_iter):
        n_iter += 1
        new_labels, mind = pairwise_sqdist_argmin(pts, centroids)
        # Repair empty clusters before measuring inertia so every index is
        # used. Donor points must come from clusters with at least two
        # members, otherwise the repair would just move the hole around.
        sizes = np.bincount(new_labels, minlength=k)
        for j in range(k):
            if sizes[j] == 0:
                eligible = sizes[new_labels] > 1
                far = int(np.where(eligible, mind, -1.0).argmax())
                sizes[new_labels[far]] -= 1
                sizes[j] += 1
                centroids[j] = pts[far]
                new_labels[far] = j
                mind[far] = 0.0
        history.append(float(mind.sum()))
        if (new_labels == labels).all():
            break
        labels = new_labels
        for j in range(k):
            centroids[j] = pts[labels == j].mean(axis=0)

    out_labels = np.empty(n, dtype=np.int64)
    out_labels[order] = labels
    return ClusterAssignment(
        labels=out_labels,
        centroids=centroids,
        inertia=history[-1],
        n_iter=n_iter,
        inertia_history=tuple(history),
    )


def nmi(a, b) -> float:
    """Normalized mutual information in [0, 1].

    Normalization is the arithmetic mean of the two entropies; by convention
    a zero-entropy (single-cluster) labeling scores 0 against anything.
    """
    a = np.asarray(a)
    b = np.asarray(b)
    if a.shape != b.shape or a.ndim != 1:
        raise LengthMismatch(f"labelings must be equal-length vectors, got {a.shape}, {b.shape}")
    n = len(a)
    if n == 0:
        raise LengthMismatch("labelings must be non-empty")
    _, ai = np.unique(a, return_inverse=True)
    _, bi = np.unique(b, return_inverse=True)
    contingency = np.zeros((ai.max() + 1, bi.max() + 1))
    np.add.at(contingency, (ai, bi), 1.0)
    pxy = contingency / n
    px = pxy.sum(axis=1)
    py = pxy.sum(axis=0)
    ha = float(-(px[px > 0] * np.log(px[px > 0])).sum())
    hb = float(-(py[py > 0] * np.log(py[py > 0])).sum())
    if ha == 0.0 or hb == 0.0:
        return 0.0
    nz = pxy > 0
    mi = float((pxy[nz] * (np.log(pxy[nz]) - np.log(np.outer(px, py)[nz]))).sum())
    return float(np.clip(mi / ((ha + hb) / 2.0), 0.0, 1.0))
