"""Two 2x2 pairs whose joint and lower spectral radii are known exactly.

The first pair (an upper- and a scaled lower-triangular all-ones matrix)
has joint spectral radius sqrt(9/10) times the golden mean; the algorithm
terminates after two iterations with a three-vertex extremal polytope.
The second pair has lower spectral radius equal to the eighth root of
4*(213803 + sqrt(44666192953)), attained by a product of length eight.

Run with:  python3 demos/exact_pairs.py
"""

import math

import numpy as np

from polyrad import MODE_L, MODE_P, MatrixFamily, RunConfig, run, serialize, verify

GOLDEN = (1.0 + math.sqrt(5.0)) / 2.0


def show(title, fam, mode, length, closed_form):
    out = run(fam, RunConfig(mode=mode, max_candidate_length=length))
    print("=" * 60)
    print(title)
    print("  status      :", out.status)
    print("  value       : %.12f" % out.value)
    print("  closed form : %.12f" % closed_form)
    print("  product     :", "".join("A%d" % i for i in reversed(out.candidate.word)))
    print("  iterations  :", out.iterations)
    print("  vertices    :", out.vertex_count)
    report = verify(fam, out.certificate)
    print("  certificate :", "valid" if report.verdict else "INVALID")
    print("  certificate size: %d bytes" % len(serialize(out.certificate)))


def main():
    jsr_pair = MatrixFamily((np.array([[1.0, 1.0], [0.0, 1.0]]),
                             0.9 * np.array([[1.0, 0.0], [1.0, 1.0]])))
    show("Joint spectral radius of the scaled triangular pair",
         jsr_pair, MODE_P, 4, math.sqrt(0.9) * GOLDEN)

    lsr_pair = MatrixFamily((np.array([[7.0, 0.0], [2.0, 3.0]]),
                             np.array([[2.0, 4.0], [0.0, 8.0]])))
    closed = (4.0 * (213803.0 + math.sqrt(44666192953.0))) ** (1.0 / 8.0)
    show("Lower spectral radius of the second pair",
         lsr_pair, MODE_L, 8, closed)


if __name__ == "__main__":
    main()
