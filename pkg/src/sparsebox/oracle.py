"""Brute-force reference projection by exhaustive support enumeration.

Correctness anchor for the fast projection: small instances only.  Every
size-k support that contains all forced indices is scored; on a fixed
support the optimum clips the kept components to the box and zeroes the
rest.  Returns the best squared distance and every tied minimizer.
"""

from dataclasses import dataclass
from itertools import combinations, islice
from math import comb

import numpy as np

from .projection import SparseBoxRegion, _as_vector, membership

__all__ = ["OracleResult", "enumerate_projection", "TIE_RTOL"]

# relative tolerance grouping tied minimizers (double precision sums of squares)
TIE_RTOL = 1e-12

_MAX_N = 25
_MAX_SUPPORTS = 2_000_000
_CHUNK = 65536


@dataclass(eq=False)
class OracleResult:
    best_distance_sq: float
    minimizers: list  # (support, point) pairs, lexicographic support order


def _support_chunks(n: int, k: int):
    it = combinations(range(n), k)
    while True:
        block = list(islice(it, _CHUNK))
        if not block:
            return
        yield np.asarray(block, dtype=np.intp).reshape(len(block), k)


def enumerate_projection(w, region: SparseBoxRegion) -> OracleResult:
    """Exhaustively minimize the distance from ``w`` over all feasible pieces."""
    w = _as_vector(w, region.dim)
    n = region.dim
    k = region.sparsity
    if n > _MAX_N:
        raise ValueError("instance too large: n=%d > %d" % (n, _MAX_N))
    if comb(n, k) > _MAX_SUPPORTS:
        raise ValueError(
            "instance too large: C(%d, %d) supports > %d" % (n, k, _MAX_SUPPORTS)
        )

    x = region.center
    delta = region.radius
    forced = np.abs(x) > delta
    n_forced = int(forced.sum())
    clipped = np.clip(w, x - delta, x + delta)
    gain = w * w - (w - clipped) ** 2
    total = float(w @ w)

    # pass 1: best masked distance
    best = np.inf
    for supports in _support_chunks(n, k):
        ok = forced[supports].sum(axis=1) == n_forced if k else np.array([n_forced == 0])
        if not ok.any():
            continue
        dists = total - gain[supports].sum(axis=1)
        best = min(best, float(dists[ok].min()))
    if not np.isfinite(best):
        raise AssertionError("no feasible support; the region center is always feasible")

    # pass 2: collect supports tied with the best, then refine with direct distances
    tol = TIE_RTOL * max(1.0, best)
    candidates = []
    for supports in _support_chunks(n, k):
        ok = forced[supports].sum(axis=1) == n_forced if k else np.array([n_forced == 0])
        dists = total - gain[supports].sum(axis=1)
        for row in np.flatnonzero(ok & (dists <= best + tol)):
            support = supports[row]
            point = np.zeros(n)
            point[support] = clipped[support]
            if not membership(point, region, 0.0):
                raise AssertionError("enumerated piece produced an infeasible point")
            diff = w - point
            candidates.append((support, point, float(diff @ diff)))

    best_exact = min(d for _, _, d in candidates)
    tol = TIE_RTOL * max(1.0, best_exact)
    minimizers = [(s, p) for s, p, d in candidates if d <= best_exact + tol]
    return OracleResult(best_exact, minimizers)
