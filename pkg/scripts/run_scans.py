"""Rational and quadratic cyclotomic scans over the default corpus, written as JSON per gamma."""

import argparse
import json
from pathlib import Path

from primdiv.config import Effort, RunConfig
from primdiv.quadfield import make_field
from primdiv.scan import scan_quadratic, scan_rational
from primdiv.suites import RATIONAL_CORPUS, quadratic_corpus


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n-max", type=int, default=120)
    ap.add_argument("--ecm-curves", type=int, default=40)
    ap.add_argument("--out", type=Path, default=Path("results/scans"))
    args = ap.parse_args()
    cfg = RunConfig(effort=Effort(ecm_curves=args.ecm_curves))
    args.out.mkdir(parents=True, exist_ok=True)

    jobs = [(f"rational_{str(g).replace('/', '_')}", lambda g=g: scan_rational(g, 1, args.n_max, cfg))
            for g in RATIONAL_CORPUS]
    for g in quadratic_corpus():
        jobs.append((f"quad_{g.m}_{g.a}_{g.b}_{g.q}",
                     lambda g=g: scan_quadratic(make_field(g.m), g, 1, min(args.n_max, 60), cfg)))
    for name, job in jobs:
        rep = job()
        (args.out / f"{name}.json").write_text(rep.to_json())
        full = sum(r.fully_factored for r in rep.rows)
        no_prim = [r.n for r in rep.rows if r.fully_factored and not r.has_primitive]
        print(f"{name:28s} rows={len(rep.rows)} factored={full} violations={rep.violations} no_primitive={no_prim}")


if __name__ == "__main__":
    main()
