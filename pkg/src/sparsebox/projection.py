"""Exact Euclidean projection onto a sparse-box intersection.

The constraint set is the set of k-sparse vectors intersected with an
l-inf ball of radius ``delta`` centered at a k-sparse point ``x``.  The
set is nonconvex (a union of coordinate subspaces cut by a box), yet a
global minimizer can be computed with one componentwise clip and one
sort, O(n log n) overall:

* center components with ``|x_i| > delta`` must belong to the support of
  any feasible point, so their indices are forced;
* on a fixed support the projection is a clip on the kept components and
  zero elsewhere, so the best support maximizes the summed per-index gain
  ``w_i^2 - (w_i - clip(w_i))^2``, found by sorting.

When ``w`` already lies inside the box, keeping its k largest components
in magnitude is optimal whenever that truncation stays inside the box;
the result is verified and the general path is used otherwise (dropping
a forced index would leave the box).
"""

from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "SparseBoxRegion",
    "SupportSplit",
    "ProjectionResult",
    "project_box",
    "project_piece",
    "project_sparse",
    "classify_support",
    "project_intersection",
    "membership",
]


def _as_vector(w, expected: int | None = None) -> np.ndarray:
    arr = np.asarray(w, dtype=float)
    if arr.ndim != 1:
        raise ValueError("expected a 1-D vector, got ndim=%d" % arr.ndim)
    if expected is not None and arr.size != expected:
        raise ValueError(
            "dimension mismatch: vector has length %d, expected %d"
            % (arr.size, expected)
        )
    if not np.all(np.isfinite(arr)):
        raise ValueError("vector has non-finite entries")
    return arr


@dataclass(eq=False)
class SparseBoxRegion:
    """Intersection of the k-sparse set with the box ``center +/- radius``.

    The center must itself be k-sparse, which guarantees the set is
    nonempty (it always contains the center).
    """

    center: np.ndarray
    radius: float
    sparsity: int

    def __post_init__(self):
        self.center = _as_vector(self.center)
        self.radius = float(self.radius)
        self.sparsity = int(self.sparsity)
        n = self.center.size
        if n < 1:
            raise ValueError("center must have length >= 1")
        if not np.isfinite(self.radius) or self.radius < 0.0:
            raise ValueError("radius must be a finite nonnegative real")
        if not 0 <= self.sparsity <= n:
            raise ValueError(
                "sparsity must satisfy 0 <= k <= n, got k=%d, n=%d"
                % (self.sparsity, n)
            )
        nnz = int(np.count_nonzero(self.center))
        if nnz > self.sparsity:
            raise ValueError(
                "center must be k-sparse: it has %d nonzeros > k=%d"
                % (nnz, self.sparsity)
            )

    @property
    def dim(self) -> int:
        return self.center.size


@dataclass(eq=False)
class SupportSplit:
    """Partition of the center's support by magnitude relative to the radius.

    ``small`` holds indices with ``0 < |x_i| <= delta`` and ``large`` those
    with ``|x_i| > delta``.  Large indices belong to the support of every
    feasible point, since zeroing one moves farther than ``delta`` from the
    center.
    """

    small: np.ndarray
    large: np.ndarray


@dataclass(eq=False)
class ProjectionResult:
    """A projected point, the support it lives on, and the squared distance."""

    point: np.ndarray
    support: np.ndarray
    sq_distance: float


def project_box(w, region: SparseBoxRegion) -> np.ndarray:
    """Componentwise clip of ``w`` to ``[center - radius, center + radius]``."""
    w = _as_vector(w, region.dim)
    x = region.center
    return np.clip(w, x - region.radius, x + region.radius)


def project_piece(w, support) -> np.ndarray:
    """Zero the components of ``w`` outside the index set ``support``."""
    w = _as_vector(w)
    idx = np.asarray(support, dtype=np.intp).ravel()
    if idx.size and (idx.min() < 0 or idx.max() >= w.size):
        raise ValueError("support index out of range for a vector of length %d" % w.size)
    out = np.zeros_like(w)
    out[idx] = w[idx]
    return out


def project_sparse(w, k: int) -> ProjectionResult:
    """Keep a set of k largest-magnitude components of ``w``, zero the rest.

    Ties at the cutoff keep the lowest index first, which makes the output
    deterministic; any tie choice attains the same distance.
    """
    w = _as_vector(w)
    n = w.size
    k = int(k)
    if not 0 <= k <= n:
        raise ValueError("k must satisfy 0 <= k <= n, got k=%d, n=%d" % (k, n))
    order = np.argsort(-np.abs(w), kind="stable")
    support = np.sort(order[:k])
    point = np.zeros_like(w)
    point[support] = w[support]
    diff = w - point
    return ProjectionResult(point, support, float(diff @ diff))


def classify_support(region: SparseBoxRegion) -> SupportSplit:
    """Split the center's support into small (``<= radius``) and large entries."""
    x = region.center
    nonzero = x != 0.0
    large = np.abs(x) > region.radius
    return SupportSplit(
        small=np.flatnonzero(nonzero & ~large),
        large=np.flatnonzero(large),
    )


def membership(y, region: SparseBoxRegion, tol: float = 0.0) -> bool:
    """True iff ``y`` is k-sparse and within ``radius + tol`` of the center.

    The nonzero count is exact: projections store zeroed components as
    exact zeros.
    """
    if tol < 0.0:
        raise ValueError("tol must be nonnegative")
    y = _as_vector(y, region.dim)
    if int(np.count_nonzero(y)) > region.sparsity:
        return False
    return float(np.max(np.abs(y - region.center))) <= region.radius + tol


def project_intersection(w, region: SparseBoxRegion) -> ProjectionResult:
    """Global Euclidean projection of ``w`` onto the sparse-box region.

    Returns one minimizer (there may be several under ties); the support is
    deterministic under the lowest-index tie rule.  The squared distance is
    the global minimum over the region.
    """
    w = _as_vector(w, region.dim)
    x = region.center
    delta = region.radius
    k = region.sparsity
    n = region.dim

    if k == 0:
        # center is the zero vector, so the region is {0}
        return ProjectionResult(np.zeros(n), np.empty(0, dtype=np.intp), float(w @ w))
    if delta == 0.0:
        diff = w - x
        return ProjectionResult(x.copy(), np.flatnonzero(x), float(diff @ diff))

    if float(np.max(np.abs(w - x))) <= delta:
        cand = project_sparse(w, k)
        # truncation can leave the box only by zeroing an index with
        # |x_i| > delta; fall back to the forced-support path then
        if float(np.max(np.abs(cand.point - x))) <= delta:
            return cand

    large = np.flatnonzero(np.abs(x) > delta)
    y = np.clip(w, x - delta, x + delta)
    if large.size == k:
        support = large
    else:
        gain = w * w - (w - y) ** 2
        masked = gain.copy()
        masked[large] = -np.inf  # forced indices: never compete for free slots
        order = np.argsort(-masked, kind="stable")
        support = np.sort(np.concatenate([large, order[: k - large.size]]))
    point = np.zeros(n)
    point[support] = y[support]
    diff = w - point
    return ProjectionResult(point, np.sort(support), float(diff @ diff))
