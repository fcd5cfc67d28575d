"""Largest prime factor of Phi_n(gamma) against n + 1 and the growth threshold, for rational gamma."""

import argparse
import math
from fractions import Fraction

from primdiv.config import RunConfig
from primdiv.scan import scan_rational


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--gamma", type=Fraction, default=Fraction(2))
    ap.add_argument("--n-max", type=int, default=200)
    args = ap.parse_args()
    rep = scan_rational(args.gamma, 1, args.n_max, RunConfig())
    print(f"{'n':>4} {'P':>24} {'log P / log n':>13} {'primitive':>9}")
    worst = math.inf
    for r in rep.rows:
        if r.n < 3:
            continue
        if not r.fully_factored:
            print(f"{r.n:4d} {'>= ' + str(r.P):>24} {'':>13} {'?':>9}")
            continue
        ratio = math.log(r.P) / math.log(r.n) if r.P > 1 else 0.0
        worst = min(worst, ratio) if r.n >= 7 else worst
        print(f"{r.n:4d} {r.P:24d} {ratio:13.3f} {str(r.has_primitive):>9}")
    print(f"min log P / log n over 7 <= n <= {args.n_max}: {worst:.3f}")


if __name__ == "__main__":
    main()
