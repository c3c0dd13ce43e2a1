"""Representative-day selection by k-means over daily feature vectors.

A year of hourly series is split into days; each day's feature vector is
the concatenation, over every input series, of that day's hours divided
by the series' annual maximum (so 100 MW loads and 0..1 availabilities
weigh comparably).  Lloyd iterations with farthest-point seeding run
under a fixed seed, ties always break toward the lowest day index, and
the within-cluster sum of squares is monotone — together that makes the
outcome reproducible bit for bit.

Each cluster becomes one representative day: its profile per series is
the plain average of the member days' raw hours, and its occurrence
weight is the member count, so the weights sum to the calendar year.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field

import numpy as np

_MAX_ITER = 100


@dataclass(frozen=True)
class RawHourlySeries:
    """One entity's hourly values for one calendar year."""
    entity: str
    year: int
    values: tuple[float, ...]

    def __post_init__(self):
        if not all(np.isfinite(self.values)):
            raise ValueError(f"series {self.entity}/{self.year} has non-finite values")


@dataclass
class ClusterResult:
    days: list[str]                            # representative day labels
    weights: dict[str, float]                  # label -> member day count
    profiles: dict[str, dict[str, tuple[float, ...]]]  # entity -> label -> hours
    assignment: list[int]                      # source day -> cluster position
    wcss: float
    iterations: int
    wcss_history: list[float] = field(default_factory=list)


def default_seed() -> int:
    return int(os.environ.get("SCGEP_SEED", "0"))


def _feature_matrix(series: list[RawHourlySeries], hours: int,
                    feature_weights: dict[str, float] | None) -> np.ndarray:
    n_days = len(series[0].values) // hours
    blocks = []
    for s in sorted(series, key=lambda s: s.entity):
        arr = np.asarray(s.values, dtype=float).reshape(n_days, hours)
        peak = np.abs(arr).max()
        scaled = arr / peak if peak > 0 else arr
        if feature_weights is not None:
            scaled = scaled * feature_weights.get(s.entity, 1.0)
        blocks.append(scaled)
    return np.hstack(blocks)


def _farthest_point_seed(X: np.ndarray, k: int, seed: int) -> list[int]:
    """First index from the seed, the rest greedily farthest; lowest index wins ties."""
    n = X.shape[0]
    chosen = [seed % n]
    d2 = np.sum((X - X[chosen[0]]) ** 2, axis=1)
    while len(chosen) < k:
        best = int(np.argmax(d2))          # argmax takes the lowest index on ties
        chosen.append(best)
        d2 = np.minimum(d2, np.sum((X - X[best]) ** 2, axis=1))
    return chosen


def cluster_representative_days(series: list[RawHourlySeries], k: int, *,
                                hours_per_day: int = 24,
                                feature_weights: dict[str, float] | None = None,
                                seed: int | None = None) -> ClusterResult:
    if not series:
        raise ValueError("no series to cluster")
    if k < 1:
        raise ValueError(f"cluster count {k} must be >= 1")
    length = len(series[0].values)
    for s in series:
        if len(s.values) != length:
            raise ValueError(f"series {s.entity} has {len(s.values)} hours, "
                             f"expected {length}")
        if s.year != series[0].year:
            raise ValueError("all series must cover the same year")
    if length % hours_per_day != 0:
        raise ValueError(f"series length {length} is not a whole number of "
                         f"{hours_per_day}-hour days")
    n_days = length // hours_per_day
    if k > n_days:
        raise ValueError(f"cannot pick {k} representative days from {n_days}")

    if seed is None:
        seed = default_seed()
    X = _feature_matrix(series, hours_per_day, feature_weights)
    centroids = X[_farthest_point_seed(X, k, seed)].copy()

    assignment = np.full(n_days, -1)
    history: list[float] = []
    iterations = 0
    for iterations in range(1, _MAX_ITER + 1):
        d2 = ((X[:, None, :] - centroids[None, :, :]) ** 2).sum(axis=2)
        new_assignment = np.argmin(d2, axis=1)     # lowest cluster on ties
        for c in range(k):
            members = np.flatnonzero(new_assignment == c)
            if members.size:
                centroids[c] = X[members].mean(axis=0)
            else:
                # revive an empty cluster at the day farthest from its centroid
                worst = int(np.argmax(d2[np.arange(n_days), new_assignment]))
                centroids[c] = X[worst]
                new_assignment[worst] = c
        wcss = float(((X - centroids[new_assignment]) ** 2).sum())
        history.append(wcss)
        if np.array_equal(new_assignment, assignment):
            break
        assignment = new_assignment

    # stable labels: clusters ordered by their earliest member day
    order = sorted(range(k), key=lambda c: int(np.flatnonzero(assignment == c)[0])
                   if np.any(assignment == c) else n_days)
    rank = {c: i for i, c in enumerate(order)}
    labels = [f"t{i + 1}" for i in range(k)]

    weights = {labels[rank[c]]: float(np.sum(assignment == c)) for c in range(k)}
    profiles: dict[str, dict[str, tuple[float, ...]]] = {}
    for s in series:
        arr = np.asarray(s.values, dtype=float).reshape(n_days, hours_per_day)
        per_day = {}
        for c in range(k):
            members = np.flatnonzero(assignment == c)
            per_day[labels[rank[c]]] = tuple(arr[members].mean(axis=0))
        profiles[s.entity] = per_day
    return ClusterResult(days=labels, weights=weights, profiles=profiles,
                         assignment=[rank[c] for c in assignment],
                         wcss=history[-1], iterations=iterations,
                         wcss_history=history)
