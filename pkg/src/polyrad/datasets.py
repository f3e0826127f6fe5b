"""Benchmark matrix families and seeded random generators.

The fixed families come from combinatorics: partial sums of the Euler
binary and ternary partition functions, the Pascal rhombus, and the
counting of binary overlap-free words.  Random families are generated
from numpy's PCG64 generator; Gaussian variates are produced by applying
the inverse normal CDF to uniform draws so the stream depends only on the
seed and the generator algorithm, not on any sampler internals.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.special import ndtri

from .matrices import MatrixFamily, spectral_radius

RANDOM_KINDS = ("gaussian-equal-norm", "nonneg-uniform", "binary")


@dataclass(frozen=True)
class DatasetSpec:
    """A reproducible description of a dataset request."""

    name: str
    r: Optional[int] = None
    kind: Optional[str] = None
    dim: Optional[int] = None
    size: Optional[int] = None
    seed: Optional[int] = None
    density: Optional[float] = None


def euler_binary(r: int) -> MatrixFamily:
    """The pair of (r-1) x (r-1) binary matrices tied to partial sums of
    the Euler binary partition function; ``r`` must be odd and >= 3.

    Entry (i, j) of the s-th matrix is 1 exactly when
    ``2 - s <= 2 j - i <= r - s + 1`` (1-based indices).
    """
    if r < 3 or r % 2 == 0:
        raise ValueError("r must be an odd integer >= 3")
    d = r - 1
    mats = []
    for s in (1, 2):
        M = np.zeros((d, d))
        for i in range(1, d + 1):
            for j in range(1, d + 1):
                if 2 - s <= 2 * j - i <= r - s + 1:
                    M[i - 1, j - 1] = 1.0
        mats.append(M)
    return MatrixFamily(mats, ("A1", "A2"))


def pascal_rhombus() -> MatrixFamily:
    """The 5x5 pair governing row growth of the Pascal rhombus."""
    A1 = [[0, 1, 0, 0, 0],
          [1, 0, 2, 0, 0],
          [0, 0, 0, 0, 0],
          [0, 1, 0, 0, 1],
          [0, 0, 0, 2, 1]]
    A2 = [[1, 0, 2, 0, 0],
          [0, 0, 0, 2, 1],
          [1, 1, 0, 0, 0],
          [0, 0, 0, 0, 0],
          [0, 1, 0, 0, 0]]
    return MatrixFamily([A1, A2], ("A1", "A2"))


def overlap_free() -> MatrixFamily:
    """The 20x20 pair counting binary overlap-free words."""
    A1 = [
        [0, 0, 0, 0, 0, 0, 0, 2, 4, 2, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
        [0, 0, 1, 1, 0, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
        [0, 0, 0, 0, 0, 1, 1, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
        [0, 0, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
        [0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
        [0, 1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
        [1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
        [0, 0, 0, 0, 0, 2, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
        [0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
        [0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
        [0, 0, 0, 0, 0, 0, 0, 1, 2, 1, 0, 0, 0, 0, 0, 0, 0, 1, 2, 1],
        [0, 0, 1, 1, 0, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
        [0, 0, 0, 0, 0, 0, 0, 1, 1, 0, 0, 0, 0, 0, 0, 1, 1, 0, 0, 0],
        [0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 1, 0, 0, 0, 0, 0, 0],
        [1, 2, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
        [0, 0, 1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
        [0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
        [0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0],
        [0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0],
        [0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0],
    ]
    A2 = [
        [0, 0, 0, 0, 0, 0, 0, 1, 2, 1, 0, 0, 0, 0, 0, 0, 0, 1, 2, 1],
        [0, 0, 1, 1, 0, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
        [0, 0, 0, 0, 0, 0, 0, 1, 1, 0, 0, 0, 0, 0, 0, 1, 1, 0, 0, 0],
        [0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 1, 0, 0, 0, 0, 0, 0],
        [1, 2, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
        [0, 0, 1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
        [0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
        [0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0],
        [0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0],
        [0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0],
        [0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 2, 4, 2],
        [0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 1, 0, 1, 1, 0, 0, 0],
        [0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 1, 1, 1, 0],
        [0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 1, 0, 0, 0, 0, 0, 0],
        [0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
        [0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0, 0, 0, 0, 0],
        [0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0],
        [0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 2, 0, 0, 0, 0],
        [0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0],
        [0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
    ]
    return MatrixFamily([A1, A2], ("A1", "A2"))


def euler_ternary_14() -> MatrixFamily:
    """The three 7x7 binary matrices for the Euler ternary problem."""
    A1 = [[1, 1, 1, 1, 1, 0, 0],
          [0, 1, 1, 1, 1, 0, 0],
          [0, 1, 1, 1, 1, 1, 0],
          [0, 1, 1, 1, 1, 1, 0],
          [0, 0, 1, 1, 1, 1, 0],
          [0, 0, 1, 1, 1, 1, 1],
          [0, 0, 1, 1, 1, 1, 1]]
    A2 = [[1, 1, 1, 1, 1, 0, 0],
          [1, 1, 1, 1, 1, 0, 0],
          [0, 1, 1, 1, 1, 0, 0],
          [0, 1, 1, 1, 1, 1, 0],
          [0, 1, 1, 1, 1, 1, 0],
          [0, 0, 1, 1, 1, 1, 0],
          [0, 0, 1, 1, 1, 1, 1]]
    A3 = [[1, 1, 1, 1, 0, 0, 0],
          [1, 1, 1, 1, 1, 0, 0],
          [1, 1, 1, 1, 1, 0, 0],
          [0, 1, 1, 1, 1, 0, 0],
          [0, 1, 1, 1, 1, 1, 0],
          [0, 1, 1, 1, 1, 1, 0],
          [0, 0, 1, 1, 1, 1, 0]]
    return MatrixFamily([A1, A2, A3], ("A1", "A2", "A3"))


def _gaussian(rng: np.random.Generator, shape) -> np.ndarray:
    """Standard normal draws via the inverse CDF of uniform variates."""
    u = rng.random(shape)
    u = np.clip(u, 1e-300, 1.0 - 1e-16)
    return ndtri(u)


def random_family(kind: str, dim: int, size: int, seed: int,
                  density: Optional[float] = None) -> MatrixFamily:
    """Seeded random families of three kinds.

    - ``gaussian-equal-norm``: i.i.d. standard normal entries, every
      matrix rescaled to spectral 2-norm 1;
    - ``nonneg-uniform``: i.i.d. uniform [0, 1) entries;
    - ``binary``: independent Bernoulli(density) entries (density defaults
      to 0.5), regenerated up to 100 times until no matrix has a zero row
      or column, then every matrix rescaled to spectral radius 1.
    """
    if kind not in RANDOM_KINDS:
        raise ValueError("kind must be one of %s" % (RANDOM_KINDS,))
    if dim < 1 or size < 1:
        raise ValueError("dim and size must be positive")
    rng = np.random.default_rng(int(seed))
    if kind == "gaussian-equal-norm":
        mats = []
        for _ in range(size):
            M = _gaussian(rng, (dim, dim))
            mats.append(M / np.linalg.norm(M, 2))
        return MatrixFamily(mats)
    if kind == "nonneg-uniform":
        return MatrixFamily([rng.random((dim, dim)) for _ in range(size)])
    p = 0.5 if density is None else float(density)
    if not 0.0 < p <= 1.0:
        raise ValueError("density must lie in (0, 1]")
    for _ in range(100):
        mats = [(rng.random((dim, dim)) < p).astype(float) for _ in range(size)]
        ok = all(M.any(axis=0).all() and M.any(axis=1).all() for M in mats)
        if not ok:
            continue
        radii = [spectral_radius(M) for M in mats]
        if any(r == 0.0 for r in radii):
            continue
        return MatrixFamily([M / r for M, r in zip(mats, radii)])
    raise RuntimeError("could not draw a binary family without zero rows or "
                       "columns in 100 attempts; raise the density")


def build(spec: DatasetSpec) -> MatrixFamily:
    """Materialize a family from a dataset spec."""
    if spec.name == "euler-binary":
        if spec.r is None:
            raise ValueError("euler-binary requires r")
        return euler_binary(spec.r)
    if spec.name == "pascal-rhombus":
        return pascal_rhombus()
    if spec.name == "overlap-free":
        return overlap_free()
    if spec.name == "euler-ternary-14":
        return euler_ternary_14()
    if spec.name == "random":
        if spec.kind is None or spec.dim is None or spec.size is None \
                or spec.seed is None:
            raise ValueError("random requires kind, dim, size, and seed")
        return random_family(spec.kind, spec.dim, spec.size, spec.seed,
                             spec.density)
    raise ValueError("unknown dataset %r" % (spec.name,))
