"""Structural analysis of nonnegative matrix families.

Index sets reported to callers (invariant faces, block supports) are
1-based, matching the convention used everywhere else in the library.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

from .matrices import MatrixError, MatrixFamily

POS_TOL_DEFAULT = 1e-12


class PatternBudgetError(RuntimeError):
    """Raised when the positivity pattern search exceeds its budget.

    This outcome is "indeterminate": it neither confirms nor refutes
    eventual positivity.
    """


@dataclass(frozen=True)
class StructureReport:
    positively_irreducible: bool
    invariant_face: Optional[Tuple[int, ...]]
    blocks: Optional[Tuple[Tuple[int, ...], ...]]
    eventually_positive_at: Optional[int]


def _require_nonnegative(family: MatrixFamily) -> None:
    if not family.is_nonnegative():
        raise MatrixError("this analysis requires a nonnegative family")


def _union_pattern(family: MatrixFamily) -> np.ndarray:
    pattern = np.zeros((family.dim, family.dim), dtype=bool)
    for M in family.matrices:
        pattern |= M > 0.0
    return pattern


def _strong_components(family: MatrixFamily) -> Tuple[int, np.ndarray, np.ndarray]:
    """Strongly connected components of the union digraph.

    There is an edge from node j to node i whenever some family member has
    a positive (i, j) entry; the adjacency matrix is therefore the transpose
    of the union pattern.
    """
    pattern = _union_pattern(family)
    adjacency = csr_matrix(pattern.T)
    count, labels = connected_components(adjacency, directed=True, connection="strong")
    return count, labels, pattern


def check_positive_irreducible(family: MatrixFamily):
    """Whether the union digraph is strongly connected.

    Returns ``(True, None)`` or ``(False, face)`` where ``face`` is a
    1-based index set whose coordinate subspace is invariant under every
    family member.
    """
    _require_nonnegative(family)
    count, labels, pattern = _strong_components(family)
    if count == 1:
        return True, None
    # A component with no edges leaving it spans an invariant face.
    d = family.dim
    for label in range(count):
        inside = np.nonzero(labels == label)[0]
        outside = np.nonzero(labels != label)[0]
        # Edge j -> i exists when pattern[i, j]; leaving means j inside, i outside.
        if not pattern[np.ix_(outside, inside)].any():
            return False, tuple(int(i) + 1 for i in sorted(inside))
    raise RuntimeError("no closed component found in a non-strongly-connected digraph")


def _topological_component_order(count: int, labels: np.ndarray,
                                 pattern: np.ndarray) -> List[int]:
    """Topologically order components so edges go from earlier to later."""
    members: List[List[int]] = [[] for _ in range(count)]
    for node, label in enumerate(labels):
        members[label].append(node)
    successors = [set() for _ in range(count)]
    indegree = [0] * count
    d = pattern.shape[0]
    rows, cols = np.nonzero(pattern)
    for i, j in zip(rows, cols):  # edge j -> i
        a, b = labels[j], labels[i]
        if a != b and b not in successors[a]:
            successors[a].add(b)
            indegree[b] += 1
    # Kahn's algorithm, deterministic by smallest member node.
    ready = sorted((label for label in range(count) if indegree[label] == 0),
                   key=lambda lb: min(members[lb]))
    order = []
    while ready:
        label = ready.pop(0)
        order.append(label)
        released = []
        for succ in successors[label]:
            indegree[succ] -= 1
            if indegree[succ] == 0:
                released.append(succ)
        ready = sorted(ready + released, key=lambda lb: min(members[lb]))
    if len(order) != count:
        raise RuntimeError("cycle detected in the component condensation")
    return order


def factorize_nonnegative(family: MatrixFamily):
    """Permute a reducible nonnegative family into block-triangular form.

    Returns ``(subfamilies, permutation, blocks)`` where ``permutation`` is
    a 1-based tuple mapping new positions to original indices and
    ``blocks`` lists the 1-based original index sets of the diagonal
    blocks, in topological order of the component condensation.

    The joint spectral radius of the family equals the maximum over the
    diagonal-block subfamilies.  The analogous reduction is not valid for
    the lower spectral radius, so callers computing minimal growth must
    treat the blocks as informational only.
    """
    _require_nonnegative(family)
    count, labels, pattern = _strong_components(family)
    order = _topological_component_order(count, labels, pattern)
    members: List[List[int]] = [[] for _ in range(count)]
    for node, label in enumerate(labels):
        members[label].append(node)
    perm0: List[int] = []
    blocks: List[Tuple[int, ...]] = []
    for label in order:
        nodes = sorted(members[label])
        perm0.extend(nodes)
        blocks.append(tuple(n + 1 for n in nodes))
    subfamilies = []
    for label in order:
        nodes = sorted(members[label])
        subfamilies.append(MatrixFamily(
            [M[np.ix_(nodes, nodes)] for M in family.matrices], family.labels))
    permutation = tuple(p + 1 for p in perm0)
    return subfamilies, permutation, tuple(blocks)


def eventual_positivity(family: MatrixFamily, k_max: int = 12,
                        pattern_budget: int = 10000) -> Optional[int]:
    """Smallest k such that every length-k product is entrywise positive.

    Returns ``None`` when no such k <= k_max exists.  A zero row or column
    in any family member rules positivity out immediately.  Raises
    :class:`PatternBudgetError` when the set of distinct zero/nonzero
    patterns exceeds ``pattern_budget``.
    """
    _require_nonnegative(family)
    base = [M > 0.0 for M in family.matrices]
    for P in base:
        if not P.any(axis=0).all() or not P.any(axis=1).all():
            return None
    frontier = {P.tobytes(): P for P in base}
    for k in range(1, k_max + 1):
        if all(P.all() for P in frontier.values()):
            return k
        nxt = {}
        for P in frontier.values():
            Pf = P.astype(float)
            for B in base:
                Q = (Pf @ B) > 0.0
                nxt[Q.tobytes()] = Q
                if len(nxt) > pattern_budget:
                    raise PatternBudgetError(
                        "more than %d distinct patterns at length %d"
                        % (pattern_budget, k + 1))
        frontier = nxt
    return None


def spans_check(vertices, mode: str, pos_tol: float = POS_TOL_DEFAULT) -> bool:
    """Whether the vertex list spans enough of the space.

    ``mode="linear"``: the vertices span the whole space (full rank).
    ``mode="positive"``: every coordinate carries a strictly positive entry
    in at least one vertex.
    """
    if mode not in ("linear", "positive"):
        raise ValueError("mode must be 'linear' or 'positive'")
    V = np.asarray(list(vertices), dtype=float)
    if V.ndim != 2 or V.size == 0:
        raise ValueError("vertices must form a non-empty 2-D array")
    if mode == "linear":
        return int(np.linalg.matrix_rank(V)) == V.shape[1]
    return bool((V > pos_tol).any(axis=0).all())


def analyze(family: MatrixFamily, k_max: int = 12,
            pattern_budget: int = 10000) -> StructureReport:
    """Convenience wrapper combining the structural checks."""
    irreducible, face = check_positive_irreducible(family)
    blocks = None
    if not irreducible:
        _, _, blocks = factorize_nonnegative(family)
    try:
        positive_at = eventual_positivity(family, k_max, pattern_budget)
    except PatternBudgetError:
        positive_at = None
    return StructureReport(irreducible, face, blocks, positive_at)
