"""Table of theta_p for the first S(K) primes of a few fields: generator, height window and support."""

import argparse
import math

from primdiv.quadfield import make_field
from primdiv.theta import independence_rank, square_class_independent, theta_batch, verify_theta


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--fields", type=int, nargs="+", default=[5, 2, -5, -23, 10, 79])
    ap.add_argument("--count", type=int, default=10)
    args = ap.parse_args()
    for m in args.fields:
        fld = make_field(m)
        batch = theta_batch(fld, args.count)
        print(f"\n{fld}  log eta = {fld.log_eta:.4f}")
        print(f"{'p':>5} {'N(a)':>4} {'h(theta)':>9} {'|h - log p/2|':>13} {'window':>7}  extra support")
        for t in batch.thetas:
            r = verify_theta(t)
            extra = sorted({k[0] for k in r.support} - {t.source_prime})
            print(f"{t.source_prime:5d} {t.auxiliary_ideal.norm:4d} {r.height:9.4f} {r.window_lhs:13.4f} "
                  f"{r.window_rhs:7.4f}  {extra or ''}")
        indep, _ = square_class_independent([t.value for t in batch.thetas], fld)
        print(f"rank {independence_rank(batch)}/{batch.count}, square-class independent: {indep}, "
              f"(1/2) log p range {0.5 * math.log(batch.thetas[0].source_prime):.3f}.."
              f"{0.5 * math.log(batch.thetas[-1].source_prime):.3f}")


if __name__ == "__main__":
    main()
