"""Checkable first-order optimality conditions for the sparse-box projection.

For the distance objective f(y) = 1/2 ||w - y||^2 over the sparse-box
region, three nested necessary conditions can be tested on a candidate:

* basic feasibility: sign conditions of the per-coordinate KKT system on
  the support (all coordinates when the candidate has fewer than k
  nonzeros);
* fixed-point stationarity: the candidate reprojects onto itself when
  moved along the negative gradient with step 1/L;
* coordinatewise minimality: no single-coordinate move (support not full)
  or remove-one-insert-one swap (support full) improves the objective.

Every global minimizer satisfies all three; the converse fails, which is
what makes them useful as independent test assertions.
"""

from dataclasses import dataclass, field

import numpy as np

from .projection import (
    SparseBoxRegion,
    _as_vector,
    membership,
    project_intersection,
)

__all__ = [
    "StationarityReport",
    "is_basic_feasible",
    "is_l_stationary",
    "kth_largest_magnitude",
    "is_cw_minimum",
    "basic_feasibility_violations",
    "cw_violations",
    "stationarity_report",
]

DEFAULT_TOL = 1e-10
_FIXED_POINT_RTOL = 1e-10


def _boundary_tol(region: SparseBoxRegion) -> float:
    return 1e-12 * max(1.0, region.radius)


def _require_feasible(y, region: SparseBoxRegion) -> np.ndarray:
    y = _as_vector(y, region.dim)
    if not membership(y, region, _boundary_tol(region)):
        raise ValueError("candidate is not feasible for the region")
    return y


def basic_feasibility_violations(y, w, region: SparseBoxRegion, tol: float = DEFAULT_TOL):
    """Violations of the sign conditions, as (index, condition, residual) triples."""
    y = _require_feasible(y, region)
    w = _as_vector(w, region.dim)
    x = region.center
    delta = region.radius
    btol = _boundary_tol(region)

    if np.count_nonzero(y) < region.sparsity:
        indices = np.arange(region.dim)
    else:
        indices = np.flatnonzero(y)

    violations = []
    for i in indices:
        at_upper = abs(y[i] - (x[i] + delta)) <= btol
        at_lower = abs(y[i] - (x[i] - delta)) <= btol
        if at_upper and at_lower:
            continue  # degenerate interval, no feasible move
        if at_upper:
            residual = y[i] - w[i]
            condition = "upper-bound sign"
        elif at_lower:
            residual = w[i] - y[i]
            condition = "lower-bound sign"
        else:
            residual = abs(y[i] - w[i])
            condition = "interior match"
        if residual > tol:
            violations.append((int(i), condition, float(residual)))
    return violations


def is_basic_feasible(y, w, region: SparseBoxRegion, tol: float = DEFAULT_TOL) -> bool:
    return not basic_feasibility_violations(y, w, region, tol)


def is_l_stationary(y, w, region: SparseBoxRegion, lipschitz: float) -> bool:
    """Fixed-point test: y reprojects onto itself from y - (y - w)/L.

    Compares distances rather than points, so tied projections do not
    produce false negatives.
    """
    if lipschitz <= 0.0:
        raise ValueError("lipschitz constant must be positive")
    y = _require_feasible(y, region)
    w = _as_vector(w, region.dim)
    v = y - (y - w) / lipschitz
    result = project_intersection(v, region)
    target = float(np.linalg.norm(v - y))
    achieved = float(np.sqrt(result.sq_distance))
    return abs(achieved - target) <= _FIXED_POINT_RTOL * max(1.0, target)


def kth_largest_magnitude(y, k: int) -> float:
    """The k-th largest absolute value of the entries of ``y``."""
    y = _as_vector(y)
    if not 1 <= k <= y.size:
        raise ValueError("k must satisfy 1 <= k <= n, got k=%d, n=%d" % (k, y.size))
    return float(np.sort(np.abs(y))[y.size - k])


def cw_violations(y, w, region: SparseBoxRegion, tol: float = DEFAULT_TOL):
    """Coordinatewise-minimality violations, one triple per offending index.

    With a non-full support, each coordinate may move to its box-clipped
    optimum.  With a full support, one kept coordinate is zeroed and any
    coordinate is set to its box-clipped optimum; swaps that cannot stay
    in the box for any value (zeroing an index with |x_i| > delta) are
    vacuous.
    """
    y = _require_feasible(y, region)
    w = _as_vector(w, region.dim)
    x = region.center
    delta = region.radius

    clipped = np.clip(w, x - delta, x + delta)
    keep_cost = 0.5 * (w - y) ** 2
    zero_cost = 0.5 * w * w
    move_cost = 0.5 * (w - clipped) ** 2
    f_y = float(keep_cost.sum())

    violations = []
    if np.count_nonzero(y) < region.sparsity:
        improvement = keep_cost - move_cost
        for i in np.flatnonzero(improvement > tol):
            violations.append((int(i), "coordinate move", float(improvement[i])))
        return violations

    can_zero = np.abs(x) <= delta
    for i in np.flatnonzero(y):
        swapped = f_y - keep_cost[i] + zero_cost[i] - keep_cost + move_cost
        swapped[i] = f_y - keep_cost[i] + move_cost[i]
        if not can_zero[i]:
            only_self = np.full_like(swapped, np.inf)
            only_self[i] = swapped[i]
            swapped = only_self
        best = float(swapped.min())
        if f_y > best + tol:
            violations.append((int(i), "coordinate swap", float(f_y - best)))
    return violations


def is_cw_minimum(y, w, region: SparseBoxRegion, tol: float = DEFAULT_TOL) -> bool:
    return not cw_violations(y, w, region, tol)


@dataclass(eq=False)
class StationarityReport:
    basic_feasible: bool
    l_stationary_fixed_point: bool
    cw_minimum: bool
    violations: list = field(default_factory=list)


def stationarity_report(
    y,
    w,
    region: SparseBoxRegion,
    lipschitz: float = 2.0,
    tol: float = DEFAULT_TOL,
) -> StationarityReport:
    """Run all three checks and collect their violations in one report."""
    basic = basic_feasibility_violations(y, w, region, tol)
    cw = cw_violations(y, w, region, tol)
    stationary = is_l_stationary(y, w, region, lipschitz)
    violations = list(basic) + list(cw)
    if not stationary:
        violations.append((-1, "fixed point", float("nan")))
    return StationarityReport(
        basic_feasible=not basic,
        l_stationary_fixed_point=stationary,
        cw_minimum=not cw,
        violations=violations,
    )
