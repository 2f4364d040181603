"""Limited-memory symmetric quasi-Newton operators (forward form).

Stores at most ``memory`` step/gradient-difference pairs and applies the
resulting Hessian approximation B to vectors without ever forming it.
Two update formulas are supported:

* ``lbfgs``: rank-two update, positive definite as long as accepted pairs
  have positive curvature ``s.g > 0``;
* ``lsr1``: rank-one update, symmetric but possibly indefinite.

The operator is the fold of the update formula over the retained pairs,
starting from ``scaling`` times the identity.  Evicting the oldest pair
therefore triggers a rebuild of the cached rank-one terms; with the small
memories used here the cost is negligible.
"""

import numpy as np

__all__ = ["QuasiNewtonOperator"]

# relative thresholds below which a pair is rejected (lbfgs: loss of positive
# definiteness; lsr1: update breakdown)
CURVATURE_SKIP = 1e-8
SR1_SKIP = 1e-8


class QuasiNewtonOperator:
    """Limited-memory approximation B with matrix-vector products.

    Parameters
    ----------
    dim : int
        Vector length the operator acts on.
    kind : {'lbfgs', 'lsr1'}
        Update formula.
    memory : int
        Number of retained pairs; the oldest is evicted first.
    scaling : float
        Multiple of the identity used as the initial matrix.
    """

    def __init__(self, dim: int, kind: str = "lsr1", memory: int = 5, scaling: float = 1.0):
        if kind not in ("lbfgs", "lsr1"):
            raise ValueError("kind must be 'lbfgs' or 'lsr1', got %r" % (kind,))
        if memory < 1:
            raise ValueError("memory must be >= 1")
        if scaling <= 0.0:
            raise ValueError("scaling must be positive")
        self.dim = int(dim)
        self.kind = kind
        self.memory = int(memory)
        self.scaling = float(scaling)
        self._pairs: list[tuple[np.ndarray, np.ndarray]] = []
        # rank-one terms (vector u, coefficient c) with B v = scaling v + sum c (u.v) u
        self._terms: list[tuple[np.ndarray, float]] = []

    @property
    def pairs(self):
        return [(s.copy(), g.copy()) for s, g in self._pairs]

    def _check(self, v) -> np.ndarray:
        v = np.asarray(v, dtype=float)
        if v.ndim != 1 or v.size != self.dim:
            raise ValueError("dimension mismatch: expected a vector of length %d" % self.dim)
        return v

    def apply(self, v) -> np.ndarray:
        """Return B v."""
        v = self._check(v)
        out = self.scaling * v
        for u, c in self._terms:
            out = out + (c * (u @ v)) * u
        return out

    def _append_terms(self, s: np.ndarray, g: np.ndarray) -> None:
        if self.kind == "lbfgs":
            a = self.apply(s)
            sa = float(s @ a)
            sg = float(s @ g)
            if sa <= 0.0:  # cannot happen while pairs keep s.g > 0; guards rebuilds
                return
            self._terms.append((a, -1.0 / sa))
            self._terms.append((g, 1.0 / sg))
        else:
            r = g - self.apply(s)
            denom = float(s @ r)
            if abs(denom) <= SR1_SKIP * float(np.linalg.norm(s) * np.linalg.norm(r)):
                return
            self._terms.append((r, 1.0 / denom))

    def _rebuild(self) -> None:
        self._terms = []
        for s, g in self._pairs:
            self._append_terms(s, g)

    def update(self, s, g) -> bool:
        """Offer a pair; returns True when accepted (and retained)."""
        s = self._check(s)
        g = self._check(g)
        if self.kind == "lbfgs":
            accepted = float(s @ g) > CURVATURE_SKIP * float(
                np.linalg.norm(s) * np.linalg.norm(g)
            )
        else:
            r = g - self.apply(s)
            accepted = abs(float(s @ r)) > SR1_SKIP * float(
                np.linalg.norm(s) * np.linalg.norm(r)
            )
        if not accepted:
            return False
        self._pairs.append((s.copy(), g.copy()))
        if len(self._pairs) > self.memory:
            del self._pairs[0]
            self._rebuild()
        else:
            self._append_terms(s, g)
        return True

    def norm_estimate(self) -> float:
        """Power-iteration estimate of the spectral norm.

        Stops at relative accuracy 1e-4 or after 100 iterations.  With no
        stored pairs the operator is ``scaling`` times the identity and the
        value is exact.
        """
        if not self._terms:
            return self.scaling
        rng = np.random.default_rng(1729)
        u = rng.standard_normal(self.dim)
        norm_u = float(np.linalg.norm(u))
        if norm_u == 0.0:
            u = np.ones(self.dim)
            norm_u = float(np.sqrt(self.dim))
        u /= norm_u
        estimate = 0.0
        for _ in range(100):
            z = self.apply(u)
            zn = float(np.linalg.norm(z))
            if zn == 0.0:
                return estimate
            if abs(zn - estimate) <= 1e-4 * zn:
                return zn
            estimate = zn
            u = z / zn
        return estimate
