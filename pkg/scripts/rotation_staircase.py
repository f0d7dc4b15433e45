"""Rotation number of the two-slope lift shifted by t, for t on a grid in [0, 1].

Prints CSV rows ``t,kind,rho_or_lo,hi,p,q``.  Plateaus at rationals are
the mode-locking steps; rows of kind ``interval`` are the gaps between
them where no period up to ``--max-period`` was found.
"""
import argparse
import csv
import sys
from fractions import Fraction

from qinterp.dsl import parse_lift
from qinterp.gauge import RationalCert, rotation_number

BASE = "lift{ [0,1/2): x/2+1/4; [1/2,1): 3x/2-1/4 }"


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--steps", type=int, default=100)
    ap.add_argument("--max-period", type=int, default=24)
    ap.add_argument("--max-iter", type=int, default=1024)
    ap.add_argument("--out", default="-")
    args = ap.parse_args(argv)

    g0 = parse_lift(BASE)
    out = sys.stdout if args.out == "-" else open(args.out, "w", newline="")
    w = csv.writer(out)
    w.writerow(["t", "kind", "rho_or_lo", "hi", "p", "q"])
    locked = 0
    for i in range(args.steps + 1):
        t = Fraction(i, args.steps)
        rot = rotation_number(g0.shift(t), args.max_period, args.max_iter)
        if isinstance(rot, RationalCert):
            locked += 1
            w.writerow([t, "rational", rot.rho, rot.rho, rot.p, rot.q])
        else:
            w.writerow([t, "interval", rot.lo, rot.hi, "", ""])
    print(f"# {locked}/{args.steps + 1} shifts locked to a period <= {args.max_period}", file=sys.stderr)
    if out is not sys.stdout:
        out.close()


if __name__ == "__main__":
    main()
