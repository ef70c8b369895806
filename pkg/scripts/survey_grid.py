"""Survey the parameter grid: conditions vs. verification, witnesses, duality.

    python scripts/survey_grid.py --p 2 --bound 2 --pool "0,1,1/t,1/t^2,1+1/t"
"""
import argparse
import collections
import itertools
import time

from hopforge.localfield import scalar_parse
from hopforge.orders import (
    DualFamilyParams,
    build_dual,
    build_primal,
    check_conditions,
    delta_table_holds,
    discriminant_valuation,
    dualize,
    expected_dual_discriminant,
    orders_equal,
    pairing_matrix,
    pth_power_witness,
    verify_hopf_order,
)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--p", type=int, default=2)
    ap.add_argument("--bound", type=int, default=2)
    ap.add_argument("--pool", default="0,1,1/t,1/t^2,1+1/t")
    ap.add_argument("--fast", action="store_true")
    args = ap.parse_args()
    p = args.p
    pool = [scalar_parse(s, p) for s in args.pool.split(",")]
    stats = collections.Counter()
    t0 = time.time()
    for i1, i2, i3 in itertools.product(range(args.bound + 1), repeat=3):
        for mu, al, be in itertools.product(pool, repeat=3):
            prm = DualFamilyParams(p, i1, i2, i3, mu, al, be)
            cond = check_conditions(prm, 3)
            d = build_dual(prm, 3)
            if cond.main:
                stats["main"] += 1
                if not verify_hopf_order(d, exhaustive=not args.fast).all_pass:
                    stats["dual_unsound"] += 1
                    print("dual fails despite conditions", prm)
                if cond.mild:
                    stats["main+mild"] += 1
                    e = build_primal(prm, 3)
                    if not verify_hopf_order(e, exhaustive=not args.fast).all_pass:
                        stats["primal_unsound"] += 1
                        print("primal fails despite conditions", prm)
                        continue
                    _, uni = pairing_matrix(d, e)
                    ok = (uni and delta_table_holds(d, e)
                          and discriminant_valuation(d) == expected_dual_discriminant(p, 3, (i1, i2, i3))
                          and orders_equal(dualize(e), d))
                    if not ok:
                        stats["duality_mismatch"] += 1
                        print("duality mismatch", prm)
            else:
                neg = any(c and c.valuation() < 0
                          for k in (1, 2) for c in pth_power_witness(d, k))
                stats["violating"] += 1
                if not neg:
                    stats["no_witness"] += 1
                    print("no negative witness", prm)
    print(dict(stats), f"{time.time() - t0:.1f}s")


if __name__ == "__main__":
    main()
