"""Membership linear programs for polytope norms and antinorms.

Each function returns the largest (or, for antinorms, smallest) ``t`` such
that ``t * z`` lies in the hull generated by the vertex list ``V``:

- ``norm_membership_R``: balanced hull (symmetric convex combinations with
  coefficient 1-norm at most 1);
- ``norm_membership_P``: order ideal of the convex hull in the nonnegative
  orthant (``t z <= sum t_x x`` with convex weights);
- ``antinorm_membership_L``: dominating set of the hull
  (``t z >= sum t_x x`` with weights summing to at least 1);
- ``antinorm_membership_ext``: the same with extra recession rays ``H``.

For a point strictly inside the unit ball the returned value exceeds 1; for
a point strictly outside it is below 1 (reversed for the antinorm variants).
"""

from __future__ import annotations

from typing import Optional, Sequence

import numpy as np

from .simplex import (
    EQ,
    FEAS_TOL,
    GE,
    INFEASIBLE,
    LE,
    OPTIMAL,
    UNBOUNDED,
    LinearProgram,
    LPOutcome,
    solve_lp,
)

_INF = float("inf")


class MembershipError(RuntimeError):
    """Raised when a membership LP finishes with an impossible status."""


def _stack(z, V):
    z = np.asarray(z, dtype=float)
    if z.ndim != 1:
        raise ValueError("z must be a vector")
    if not V:
        raise ValueError("the vertex list must be non-empty")
    Vm = np.asarray(V, dtype=float)
    if Vm.ndim != 2 or Vm.shape[1] != z.size:
        raise ValueError("vertices must match the dimension of z")
    if float(np.max(np.abs(z))) == 0.0:
        raise ValueError("z must be nonzero")
    return z, Vm


def norm_membership_R(z, V, feas_tol: float = FEAS_TOL) -> float:
    """Membership value of ``z`` in the balanced hull of ``V``.

    Maximizes ``t`` subject to ``t z = sum_x c_x x`` with ``sum |c_x| <= 1``;
    the signed coefficients are split into positive and negative parts.
    """
    z, Vm = _stack(z, V)
    d = z.size
    k = Vm.shape[0]
    nvar = 1 + 2 * k
    objective = np.zeros(nvar)
    objective[0] = 1.0
    rows = []
    for i in range(d):
        row = np.zeros(nvar)
        row[0] = z[i]
        row[1:1 + k] = -Vm[:, i]
        row[1 + k:] = Vm[:, i]
        rows.append((row, EQ, 0.0))
    budget = np.zeros(nvar)
    budget[1:] = 1.0
    rows.append((budget, LE, 1.0))
    bounds = [(0.0, _INF)] * nvar
    outcome = solve_lp(LinearProgram("max", objective, rows, bounds), feas_tol,
                       assume_bounded=True)
    if outcome.status != OPTIMAL:
        raise MembershipError("balanced-hull membership LP ended %s" % outcome.status)
    return float(outcome.value)


def norm_membership_P(z, V, feas_tol: float = FEAS_TOL) -> float:
    """Membership value of ``z`` in the order ideal of the hull of ``V``.

    The returned value is certified: the solver's convex weights are
    projected back onto the feasible set and the value is recomputed from
    that exactly-feasible decomposition, so it never overshoots the true
    optimum by more than roundoff in a handful of dot products.
    """
    z, Vm = _stack(z, V)
    d = z.size
    k = Vm.shape[0]
    nvar = 1 + k
    objective = np.zeros(nvar)
    objective[0] = 1.0
    rows = []
    for i in range(d):
        row = np.zeros(nvar)
        row[0] = z[i]
        row[1:] = -Vm[:, i]
        rows.append((row, LE, 0.0))
    budget = np.zeros(nvar)
    budget[1:] = 1.0
    rows.append((budget, LE, 1.0))
    bounds = [(0.0, _INF)] * nvar
    outcome = solve_lp(LinearProgram("max", objective, rows, bounds), feas_tol,
                       assume_bounded=True)
    if outcome.status != OPTIMAL:
        raise MembershipError("order-ideal membership LP ended %s" % outcome.status)
    t = float(outcome.value)
    if outcome.assignment is not None:
        w = np.clip(outcome.assignment[1:], 0.0, None)
        s = float(w.sum())
        if s > 1.0:
            w = w / s
        rhs = Vm.T @ w
        pos = z > 0.0
        if np.any(pos):
            t = float(np.min(rhs[pos] / z[pos]))
    return t


def antinorm_membership_L(z, V, feas_tol: float = FEAS_TOL) -> float:
    """Antinorm membership value: infeasible programs return ``inf``."""
    return antinorm_membership_ext(z, V, None, feas_tol)


def antinorm_membership_ext(z, V, H: Optional[Sequence] = None,
                            feas_tol: float = FEAS_TOL) -> float:
    """Antinorm membership against the hull of ``V`` plus recession rays ``H``.

    Minimizes ``t`` subject to ``t z >= sum_x c_x x + sum_h c_h h`` with
    ``sum_x c_x >= 1`` and all coefficients nonnegative.  Returns ``inf``
    when no multiple of ``z`` dominates the hull.
    """
    z, Vm = _stack(z, V)
    d = z.size
    k = Vm.shape[0]
    rays = [np.asarray(h, dtype=float) for h in (H or [])]
    for h in rays:
        if h.shape != (d,):
            raise ValueError("ray dimension mismatch")
    nh = len(rays)
    nvar = 1 + k + nh
    objective = np.zeros(nvar)
    objective[0] = 1.0
    rows = []
    for i in range(d):
        row = np.zeros(nvar)
        row[0] = z[i]
        row[1:1 + k] = -Vm[:, i]
        for j, h in enumerate(rays):
            row[1 + k + j] = -h[i]
        rows.append((row, GE, 0.0))
    budget = np.zeros(nvar)
    budget[1:1 + k] = 1.0
    rows.append((budget, GE, 1.0))
    bounds = [(0.0, _INF)] * nvar
    outcome = solve_lp(LinearProgram("min", objective, rows, bounds), feas_tol,
                       assume_bounded=True)
    if outcome.status == INFEASIBLE:
        return _INF
    if outcome.status != OPTIMAL:
        raise MembershipError("antinorm membership LP ended %s" % outcome.status)
    t = float(outcome.value)
    if outcome.assignment is not None:
        # Certify from an exactly feasible set of weights: any feasible
        # decomposition bounds the minimum from above, so the returned
        # value never undershoots the true optimum.
        wx = np.clip(outcome.assignment[1:1 + k], 0.0, None)
        s = float(wx.sum())
        if s > 0.0:
            if s < 1.0:
                wx = wx / s
            rhs = Vm.T @ wx
            if nh:
                wh = np.clip(outcome.assignment[1 + k:], 0.0, None)
                rhs = rhs + np.column_stack(rays) @ wh
            pos = z > 0.0
            blocked = (~pos) & (rhs > 1e-12 * max(1.0, float(rhs.max())))
            if np.any(pos) and not np.any(blocked):
                t = max(0.0, float(np.max(rhs[pos] / z[pos])))
    return t


def cone_ray_margin(image, H, feas_tol: float = FEAS_TOL) -> float:
    """Largest uniform margin ``t`` with ``image >= t * 1 + sum_h c_h h``.

    Used to certify that the image of a cone ray stays strictly inside the
    cone spanned by ``H`` and the all-ones direction.  Returns ``inf`` when
    the margin is unbounded.
    """
    image = np.asarray(image, dtype=float)
    d = image.size
    rays = [np.asarray(h, dtype=float) for h in H]
    nh = len(rays)
    nvar = 1 + nh
    objective = np.zeros(nvar)
    objective[0] = 1.0
    rows = []
    for i in range(d):
        row = np.zeros(nvar)
        row[0] = 1.0
        for j, h in enumerate(rays):
            row[1 + j] = rays[j][i]
        rows.append((row, LE, image[i]))
    bounds = [(-_INF, _INF)] + [(0.0, _INF)] * nh
    outcome = solve_lp(LinearProgram("max", objective, rows, bounds), feas_tol)
    if outcome.status == UNBOUNDED:
        return _INF
    if outcome.status != OPTIMAL:
        raise MembershipError("cone margin LP ended %s" % outcome.status)
    return float(outcome.value)
