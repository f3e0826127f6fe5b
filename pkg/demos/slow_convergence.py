"""A family where the default algorithm can only bound the answer.

For the pair A1 = [[1,1],[0,1]], A2 = (4/5)[[1,0],[1,1]] the extremal
polytope has infinitely many vertices accumulating on the unit circle, so
vertex growth never stops on its own.  The run below hits the iteration
cap but still returns two-sided bounds with a gap below 1e-3, because the
membership values of the surviving vertices bound the radius from both
sides.  Discarding new points that land exactly on the unit sphere
(--remove-boundary on the command line) restores finite termination with
the exact value 1 + 1/sqrt(5).

Run with:  python3 demos/slow_convergence.py
"""

import math

import numpy as np

from polyrad import MODE_P, MatrixFamily, RunConfig, run


def main():
    fam = MatrixFamily([np.array([[1.0, 1.0], [0.0, 1.0]]),
                        0.8 * np.array([[1.0, 0.0], [1.0, 1.0]])])
    target = 1.0 + 1.0 / math.sqrt(5.0)
    print("target value: 1 + 1/sqrt(5) = %.12f" % target)

    out = run(fam, RunConfig(mode=MODE_P, max_candidate_length=4))
    lo, hi = out.bounds
    print()
    print("default run:")
    print("  status   :", out.status)
    print("  bounds   : [%.12f, %.12f]" % (lo, hi))
    print("  gap      : %.3e" % (hi - lo))
    print("  vertices :", out.vertex_count)

    out = run(fam, RunConfig(mode=MODE_P, max_candidate_length=4,
                             remove_boundary=True))
    print()
    print("with boundary points discarded:")
    print("  status   :", out.status)
    print("  value    : %.12f" % out.value)
    print("  error    : %.3e" % abs(out.value - target))
    print("  vertices :", out.vertex_count)


if __name__ == "__main__":
    main()
