"""Candidate product search, family normalization, and cyclic root trees.

A candidate is a primitive product word maximizing (or minimizing) the
averaged spectral radius ``rho(P)^(1/n)`` over all words up to a length
cap.  Words are deduplicated up to cyclic permutation; the canonical
representative is the rotation whose left-to-right reading is smallest.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

import numpy as np

from .matrices import (
    GAP_TOL_DEFAULT,
    REAL_MULTIPLE,
    REAL_SIMPLE_UNIQUE,
    EigenAnalysis,
    MatrixError,
    MatrixFamily,
    Word,
    canonical_word,
    cyclic_word,
    dual_leading_eigenvector,
    leading_eigen_analysis,
    primitive_root_word,
    spectral_radius,
    word_matrix,
    word_reading,
)


class EnumerationBudgetError(RuntimeError):
    """Raised when the word enumeration would exceed its budget."""


class InapplicableError(RuntimeError):
    """Raised when the candidate's leading eigenstructure rules the
    polytope construction out (no real leading eigenvector, or a zero
    image in the antinorm setting)."""


class RestartFailedError(RuntimeError):
    """Raised when no strictly better candidate can be derived from a
    stopping-criterion violation."""


@dataclass(frozen=True)
class Candidate:
    word: Word
    rho: float
    rho_per_step: float
    eigen: EigenAnalysis


@dataclass(frozen=True)
class CyclicRoot:
    """Root vertices (and optional duals) of the cyclic tree of a candidate.

    ``vertices[i]`` is the leading eigenvector of the (i+1)-th cyclic
    permutation of the normalized candidate product; consecutive vertices
    are images of each other under the normalized generators.  ``duals``
    (when present) are the matching left eigenvectors scaled so that each
    pairing ``(dual_i, vertex_i)`` equals 1.
    """

    scaled_family: MatrixFamily
    candidate: Candidate
    vertices: Tuple[np.ndarray, ...]
    duals: Optional[Tuple[np.ndarray, ...]]


def make_candidate(family: MatrixFamily, word: Sequence[int],
                   gap_tol: float = GAP_TOL_DEFAULT) -> Candidate:
    """Build a candidate record for ``word`` (canonicalized)."""
    word = canonical_word(primitive_root_word(word))
    product = word_matrix(family, word)
    eigen = leading_eigen_analysis(product, gap_tol)
    rho = eigen.rho
    per_step = rho ** (1.0 / len(word)) if rho > 0.0 else 0.0
    return Candidate(word, rho, per_step, eigen)


def enumerate_candidates(family: MatrixFamily, max_length: int, sense: str,
                         gap_tol: float = GAP_TOL_DEFAULT,
                         budget: int = 500000) -> Candidate:
    """Best candidate word of length at most ``max_length``.

    ``sense`` is ``"max"`` (joint spectral radius) or ``"min"`` (lower
    spectral radius).  Ties within relative 1e-12 resolve to the shortest
    word and then to the lexicographically smallest reading, which is the
    order of enumeration.  In the ``"min"`` sense a nilpotent product
    short-circuits the search: the lower spectral radius is zero.
    """
    if sense not in ("max", "min"):
        raise ValueError("sense must be 'max' or 'min'")
    if max_length < 1:
        raise ValueError("max_length must be at least 1")
    m = family.size
    total = sum(m ** k for k in range(1, max_length + 1))
    if total > budget:
        raise EnumerationBudgetError(
            "enumerating %d words exceeds the budget of %d" % (total, budget))
    best: Optional[Tuple[float, Word]] = None
    rel = 1e-12
    for length in range(1, max_length + 1):
        for reading in itertools.product(range(1, m + 1), repeat=length):
            rotations = (reading[i:] + reading[:i] for i in range(length))
            if reading != min(rotations):
                continue
            word = tuple(reversed(reading))
            if primitive_root_word(word) != word:
                continue
            rho = spectral_radius(word_matrix(family, word))
            if sense == "min" and rho == 0.0:
                return make_candidate(family, word, gap_tol)
            score = rho ** (1.0 / length) if rho > 0.0 else 0.0
            if best is None:
                best = (score, word)
                continue
            margin = rel * max(score, best[0], 1e-300)
            if sense == "max":
                if score > best[0] + margin:
                    best = (score, word)
            else:
                if score < best[0] - margin:
                    best = (score, word)
    assert best is not None
    return make_candidate(family, best[1], gap_tol)


def normalize_family(family: MatrixFamily, rho_per_step: float) -> MatrixFamily:
    """Divide every family member by ``rho_per_step``."""
    if not (rho_per_step > 0.0) or not np.isfinite(rho_per_step):
        raise MatrixError("normalization requires a positive averaged radius")
    return family.scaled(1.0 / rho_per_step)


def build_cyclic_root(scaled: MatrixFamily, candidate: Candidate,
                      with_duals: bool,
                      gap_tol: float = GAP_TOL_DEFAULT) -> CyclicRoot:
    """Root vertices of the cyclic tree for a normalized candidate.

    ``scaled`` must be the family normalized by the candidate's averaged
    spectral radius, so the candidate's product has spectral radius 1.
    """
    word = candidate.word
    n = len(word)
    product = word_matrix(scaled, word)
    eigen = leading_eigen_analysis(product, gap_tol)
    if eigen.leading_vector is None:
        raise InapplicableError(
            "candidate product has no real leading eigenvector (%s)"
            % eigen.classification)
    if abs(eigen.rho - 1.0) > 1e-8:
        raise MatrixError("normalized candidate product must have unit radius")
    lam = float(eigen.leading_sign)

    vertices = [eigen.leading_vector]
    v = eigen.leading_vector
    for i in range(1, n):
        v = scaled.matrix(word[i - 1]) @ v
        vertices.append(v)
    # Closing the cycle must reproduce the first vertex up to the sign of
    # the leading eigenvalue.
    closure = scaled.matrix(word[n - 1]) @ vertices[-1]
    scale = max(1.0, float(np.max(np.abs(vertices[0]))))
    if float(np.max(np.abs(closure - lam * vertices[0]))) > 1e-7 * scale:
        raise MatrixError("cyclic root chain failed to close up")

    duals: Optional[Tuple[np.ndarray, ...]] = None
    if with_duals and eigen.classification == REAL_SIMPLE_UNIQUE:
        duals = _dual_chain(scaled, word, product, vertices, lam)
    return CyclicRoot(scaled, candidate, tuple(vertices), duals)


def _dual_chain(scaled: MatrixFamily, word: Word, product: np.ndarray,
                vertices, lam: float) -> Tuple[np.ndarray, ...]:
    """Left eigenvectors for every cyclic permutation of the candidate.

    The chain ``dual_i = A*_{d_i} ... A*_{d_n} dual_1`` is rescaled so that
    each pairing with the matching vertex equals 1, then validated as a
    left eigenpair; on validation failure the dual is recomputed directly.
    """
    n = len(word)
    first = dual_leading_eigenvector(product, vertices[0])
    chain = [None] * n
    chain[0] = first
    w = first
    for j in range(n, 1, -1):
        w = scaled.matrix(word[j - 1]).T @ w
        chain[j - 1] = w
    for i in range(n):
        pairing = float(chain[i] @ vertices[i])
        ok = abs(pairing) > 1e-12
        if ok:
            chain[i] = chain[i] / pairing
            rotation = word_matrix(scaled, cyclic_word(word, i + 1))
            residual = rotation.T @ chain[i] - lam * chain[i]
            scale = max(1.0, float(np.max(np.abs(chain[i]))))
            ok = float(np.max(np.abs(residual))) <= 1e-7 * scale
        if not ok:
            rotation = word_matrix(scaled, cyclic_word(word, i + 1))
            chain[i] = dual_leading_eigenvector(rotation, vertices[i])
    return tuple(chain)


def restart_product(family: MatrixFamily, candidate: Candidate,
                    root: CyclicRoot, violation, sense: str,
                    r_max: int = 50,
                    gap_tol: float = GAP_TOL_DEFAULT) -> Candidate:
    """Derive a strictly better candidate from a stopping violation.

    ``violation`` is ``(j, path)`` where ``j`` is the 1-based index of the
    violated dual and ``path`` is the word (applied first to last) carrying
    the j-th root vertex to the violating point.  The new candidate is the
    smallest power ``r`` such that appending ``r`` turns of the j-th cyclic
    permutation to the path crosses spectral radius 1 in the normalized
    family.
    """
    if sense not in ("max", "min"):
        raise ValueError("sense must be 'max' or 'min'")
    j, path = violation
    path = tuple(int(i) for i in path)
    if not path:
        raise RestartFailedError("violation path is empty")
    scaled = root.scaled_family
    cycle = cyclic_word(candidate.word, j)
    current = word_matrix(scaled, path)
    turn = word_matrix(scaled, cycle)
    for r in range(1, r_max + 1):
        current = turn @ current
        rho = spectral_radius(current)
        crossed = rho > 1.0 + 1e-12 if sense == "max" else rho < 1.0 - 1e-12
        if crossed:
            new_word = canonical_word(primitive_root_word(path + cycle * r))
            replacement = make_candidate(family, new_word, gap_tol)
            improved = (replacement.rho_per_step > candidate.rho_per_step
                        if sense == "max"
                        else replacement.rho_per_step < candidate.rho_per_step)
            if not improved:
                raise RestartFailedError(
                    "restart produced no strict improvement (averaged radius "
                    "%.17g vs %.17g)" % (replacement.rho_per_step,
                                         candidate.rho_per_step))
            return replacement
    raise RestartFailedError(
        "no power up to %d crossed the unit radius; the violation is "
        "numerically marginal" % r_max)
