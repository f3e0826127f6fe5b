"""Polyhedral cone extension for minimal-growth (antinorm) runs.

When an antinorm run keeps producing vertices that creep toward the
boundary of the nonnegative orthant, the invariant set is widened from a
polytope to a polytope plus a cone spanned by rays with controlled
negative parts.  Each ray carries ``-epsilon`` on a detected index set and
1 elsewhere; the extension is only used after every ray's image under
every generator is certified to stay strictly inside the cone.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .matrices import MatrixFamily
from .membership import cone_ray_margin

DELTA_DEFAULT = 1.0 / 200.0
EPSILON_DEFAULT = 0.25
PROBE_ITERS_DEFAULT = 10

_POS_TOL = 1e-10


@dataclass(frozen=True)
class ConeExtension:
    """Recession rays added to the antinorm polytope.

    ``index_sets`` holds the 1-based coordinate sets carrying the negative
    entries; ``rays`` are the corresponding vectors with ``-epsilon`` on
    the set and 1 elsewhere.
    """

    rays: Tuple[np.ndarray, ...]
    index_sets: Tuple[Tuple[int, ...], ...]
    delta: float
    epsilon: float


def detect_near_boundary(points: Sequence[np.ndarray],
                         delta: float = DELTA_DEFAULT) -> List[Tuple[int, ...]]:
    """Index sets of coordinates that collapse relative to the peak entry.

    A point is near the orthant boundary when its smallest entry falls
    below ``delta / d`` times its largest; the returned sets list the
    collapsing coordinates (1-based), deduplicated in discovery order.
    Sets covering all coordinates are skipped: they leave no room for a
    usable ray.
    """
    sets: List[Tuple[int, ...]] = []
    seen = set()
    for point in points:
        v = np.asarray(point, dtype=float)
        d = v.size
        peak = float(v.max())
        if peak <= 0.0:
            continue
        threshold = (delta / d) * peak
        if float(v.min()) >= threshold:
            continue
        indices = tuple(int(q) + 1 for q in np.nonzero(v < threshold)[0])
        if not indices or len(indices) == d:
            continue
        if indices not in seen:
            seen.add(indices)
            sets.append(indices)
    return sets


def rays_from_index_sets(index_sets: Sequence[Sequence[int]], dim: int,
                         delta: float, epsilon: float) -> ConeExtension:
    """Build the extension rays for the given 1-based index sets."""
    rays = []
    canonical = []
    for indices in index_sets:
        indices = tuple(sorted(int(q) for q in indices))
        if not indices or indices[0] < 1 or indices[-1] > dim:
            raise ValueError("index set out of range 1..%d" % dim)
        h = np.ones(dim)
        for q in indices:
            h[q - 1] = -epsilon
        rays.append(h)
        canonical.append(indices)
    return ConeExtension(tuple(rays), tuple(canonical), delta, epsilon)


def validate_cone(scaled: MatrixFamily, extension: ConeExtension,
                  feas_tol: float = 1e-9):
    """Certify that every generator maps the cone strictly into itself.

    For each generator ``A_j`` and each ray ``h`` the margin LP must find a
    strictly positive ``t`` with ``A_j h >= t * 1 + sum_g c_g g`` over the
    extension rays ``g``.  Returns ``(True, None)`` on success or
    ``(False, (j, ray_index))`` naming the first failing pair (1-based).
    """
    for j in range(1, scaled.size + 1):
        A = scaled.matrix(j)
        for idx, h in enumerate(extension.rays):
            margin = cone_ray_margin(A @ h, extension.rays, feas_tol)
            if not margin > _POS_TOL:
                return False, (j, idx + 1)
    return True, None


def negotiate_cone(scaled: MatrixFamily, index_sets: Sequence[Sequence[int]],
                   delta: float, epsilon: float,
                   max_halvings: int = 4) -> Optional[ConeExtension]:
    """Search for a validating extension built from the detected index sets.

    At each epsilon (halved up to ``max_halvings`` times on failure) the
    full collection of rays is tried first; if a particular ray's image
    cannot be certified inside the cone, that ray is dropped and the
    smaller collection is retried, since a single uncoverable ray must not
    veto an otherwise invariant cone.  Returns a validated extension or
    ``None``, in which case the caller continues without the cone.
    """
    eps = epsilon
    for _ in range(max_halvings + 1):
        live = [tuple(sorted(int(q) for q in s)) for s in index_sets]
        while live:
            extension = rays_from_index_sets(live, scaled.dim, delta, eps)
            ok, failure = validate_cone(scaled, extension)
            if ok:
                return extension
            del live[failure[1] - 1]
        eps *= 0.5
    return None
