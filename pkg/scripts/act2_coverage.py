"""How often do act2 witnesses exist for random embeddings?

For each number of inserted jumps, draws seeded embeddings and points q
and records whether act2 succeeds with a right code, a left code, either,
or neither.  A witness needs the image of f to have no gap beyond f(q)
on the side the code moves, so coverage drops as jumps are added.
"""
import argparse
from fractions import Fraction

from qinterp import generators as gen
from qinterp.interpretation import LEFT, RIGHT, act2_witness, cofinal_rep
from qinterp.plmap import compose


def embedding_with_jumps(rng, jumps, b):
    return compose(gen.interpolated(rng, b), compose(gen._jumps(rng, b, jumps), gen.interpolated(rng, b)))


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--trials", type=int, default=200)
    ap.add_argument("--max-jumps", type=int, default=4)
    ap.add_argument("--seed", default="7")
    args = ap.parse_args(argv)

    b = gen.Bounds()
    print(f"{'jumps':>5} {'right':>7} {'left':>7} {'either':>7} {'neither':>7}")
    for jumps in range(1, args.max_jumps + 1):
        counts = {"right": 0, "left": 0, "either": 0, "neither": 0}
        for i in range(args.trials):
            rng = gen.rng_for(args.seed, "act2-coverage", jumps, i)
            f = embedding_with_jumps(rng, jumps, b)
            q = gen.rational(rng, b)
            ok = {}
            for side in (RIGHT, LEFT):
                ok[side] = act2_witness(f, cofinal_rep(q, side), cofinal_rep(f(q), side)).holds
                counts[side] += ok[side]
            counts["either" if any(ok.values()) else "neither"] += 1
        row = [Fraction(counts[k], args.trials) for k in ("right", "left", "either", "neither")]
        print(f"{jumps:>5} " + " ".join(f"{float(x):7.3f}" for x in row))


if __name__ == "__main__":
    main()
