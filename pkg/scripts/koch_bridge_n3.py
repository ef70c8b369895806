"""Compare Koch integrality of A with the family conditions for rank-3 Theta.

Theta is lower triangular with diagonal (t^i1, t^i2, t^i3) and
theta21 = -mu t^i1, theta31 = -alpha t^i1, theta32 = -beta t^i2.  Mismatches
are listed, not treated as errors.

    python scripts/koch_bridge_n3.py --p 2 --bound 2 --pool "0,1,1/t,1/t^2,1+1/t"
"""
import argparse
import collections
import itertools

from hopforge.localfield import LocalScalar, format_scalar, scalar_parse, zero
from hopforge.orders import DualFamilyParams, check_conditions, koch_matrix


def theta_for(prm):
    p = prm.p
    t = LocalScalar.t_power
    return [[t(p, prm.i1), zero(p), zero(p)],
            [-prm.mu * t(p, prm.i1), t(p, prm.i2), zero(p)],
            [-prm.alpha * t(p, prm.i1), -prm.beta * t(p, prm.i2), t(p, prm.i3)]]


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--p", type=int, default=2)
    ap.add_argument("--bound", type=int, default=2)
    ap.add_argument("--pool", default="0,1,1/t,1/t^2,1+1/t")
    ap.add_argument("--show", type=int, default=10)
    args = ap.parse_args()
    p = args.p
    pool = [scalar_parse(s, p) for s in args.pool.split(",")]
    tally = collections.Counter()
    shown = 0
    for i1, i2, i3 in itertools.product(range(args.bound + 1), repeat=3):
        for mu, al, be in itertools.product(pool, repeat=3):
            prm = DualFamilyParams(p, i1, i2, i3, mu, al, be)
            cond = check_conditions(prm, 3).main
            a, integral = koch_matrix(theta_for(prm))
            tally[(cond, integral)] += 1
            if cond != integral and shown < args.show:
                shown += 1
                bad = [(r + 1, c + 1, format_scalar(a[r][c])) for r in range(3) for c in range(3)
                       if not a[r][c].is_integral()]
                print(f"mismatch i=({i1},{i2},{i3}) mu={format_scalar(mu)} alpha={format_scalar(al)} "
                      f"beta={format_scalar(be)} conditions={cond} integral={integral} {bad}")
    for (c, k), v in sorted(tally.items()):
        print(f"conditions={c!s:5} integral={k!s:5} count={v}")


if __name__ == "__main__":
    main()
