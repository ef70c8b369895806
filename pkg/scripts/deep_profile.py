"""Time the p=3 rank-3 grid (the --deep profile) and summarize it.

    python scripts/deep_profile.py --jobs 4
"""
import argparse
import collections
import contextlib
import io
import json
import time

from hopforge.cli import main as cli


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--pool", default="0,1/t")
    ap.add_argument("--bound", type=int, default=1)
    ap.add_argument("--jobs", type=int, default=1)
    ap.add_argument("--fast", action="store_true")
    args = ap.parse_args()
    argv = ["enumerate", "--p", "3", "--grid-bound", str(args.bound), "--pool", args.pool,
            "--deep", "--jobs", str(args.jobs)] + (["--fast"] if args.fast else [])
    buf = io.StringIO()
    t0 = time.perf_counter()
    with contextlib.redirect_stdout(buf):
        code = cli(argv)
    dt = time.perf_counter() - t0
    rows = json.loads(buf.getvalue())["rows"]
    tally = collections.Counter(
        (r["main"], r["mild"], r["dual_verify"], r["primal_verify"]) for r in rows)
    for (main_, mild, dv, pv), k in sorted(tally.items()):
        print(f"main={main_!s:5} mild={mild!s:5} dual={dv} primal={pv}: {k}")
    print(f"{len(rows)} rows, exit {code}, {dt:.1f}s")


if __name__ == "__main__":
    main()
