"""The cone extension on the 20x20 overlap-free counting pair.

The joint spectral radius of this pair is found exactly (it equals
sqrt(rho(A1 A2))).  The lower spectral radius equals rho(A1 A2^10)^(1/11),
but the antinorm iteration produces vertices whose coordinates on two
index groups, {5,10,17,18} and {7,8,15,20}, collapse towards zero.  The
engine detects the collapsing groups, widens the nonnegative cone with
rays that go slightly negative on a detected group, and restarts growth
inside the widened cone when the generators map it into itself.

With these matrices one ray of the second group cannot be covered (a row
of A1 couples coordinate 8 to 15 with the wrong sign budget), so
negotiation keeps a validating sub-collection instead.  One vertex
sequence keeps collapsing forever inside the widened cone, so the run
caps out with the exact upper bound and the activated cone on record.

Run with:  python3 demos/cone_extension.py   (about 10 seconds)
"""

import math

from polyrad import MODE_L, MODE_P, RunConfig, run, spectral_radius, word_matrix
from polyrad.datasets import overlap_free


def main():
    fam = overlap_free()

    out = run(fam, RunConfig(mode=MODE_P, max_candidate_length=8))
    print("upper radius: %.9f (%s, %d vertices)"
          % (out.value, out.status, out.vertex_count))
    print("  closed form sqrt(rho(A1 A2)) = %.9f"
          % math.sqrt(spectral_radius(word_matrix(fam, (1, 2)))))

    out = run(fam, RunConfig(mode=MODE_L, max_candidate_length=11))
    lo, hi = out.bounds
    print()
    print("lower radius: status %s" % out.status)
    print("  candidate product A1 A2^10, averaged radius %.9f"
          % out.candidate.rho_per_step)
    print("  closed form rho(A1 A2^10)^(1/11) = %.9f"
          % spectral_radius(word_matrix(fam, (1,) + (2,) * 10)) ** (1.0 / 11.0))
    print("  bounds: [%.3e, %.9f]" % (lo, hi))
    print("  cone activated:", out.cone is not None)
    if out.cone_index_sets:
        print("  cone index sets:",
              ", ".join("{%s}" % ",".join(map(str, s))
                        for s in out.cone_index_sets))


if __name__ == "__main__":
    main()
