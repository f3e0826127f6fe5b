"""Growth rates of integer-sequence counting families.

Three built-in families whose joint/lower spectral radii govern the
asymptotics of combinatorial counting problems:

- the binary partial-sum families of odd order r (pairs of banded 0/1
  matrices of dimension r-1): a sweep over r prints the exact growth
  constants and the optimal switching products;
- the ternary variant (three 7x7 binary matrices);
- the Pascal-rhombus pair, where the transposed family's lower spectral
  radius is the sixth root of the radius of A1^3 A2^3.

Run with:  python3 demos/counting_families.py
"""

from polyrad import MODE_L, MODE_P, RunConfig, run
from polyrad.datasets import euler_binary, euler_ternary_14, pascal_rhombus


def reading(word):
    return "".join("A%d" % i for i in reversed(word))


def main():
    print("binary partial-sum families")
    print("%4s  %12s  %-8s  %12s  %-8s" % ("r", "upper", "product",
                                           "lower", "product"))
    for r in (7, 9, 11, 13, 15):
        fam = euler_binary(r)
        up = run(fam, RunConfig(mode=MODE_P, max_candidate_length=6))
        lo = run(fam, RunConfig(mode=MODE_L, max_candidate_length=6))
        print("%4d  %12.6f  %-8s  %12.6f  %-8s"
              % (r, sum(up.bounds) / 2.0, reading(up.candidate.word),
                 sum(lo.bounds) / 2.0, reading(lo.candidate.word)))

    print()
    print("ternary family (three 7x7 matrices)")
    fam = euler_ternary_14()
    up = run(fam, RunConfig(mode=MODE_P, max_candidate_length=6))
    lo = run(fam, RunConfig(mode=MODE_L, max_candidate_length=6))
    print("  upper: %.8f via %s (%s)" % (up.value, reading(up.candidate.word),
                                         up.status))
    print("  lower: %.8f via %s (%s)" % (lo.value, reading(lo.candidate.word),
                                         lo.status))

    print()
    print("Pascal rhombus (transposed family, boundary points discarded)")
    fam = pascal_rhombus().transposed()
    out = run(fam, RunConfig(mode=MODE_L, max_candidate_length=6,
                             remove_boundary=True))
    print("  lower: %.10f via %s (%s, %d vertices)"
          % (out.value, reading(out.candidate.word), out.status,
             out.vertex_count))


if __name__ == "__main__":
    main()
