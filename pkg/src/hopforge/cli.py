"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 input error.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor

from .identitylab import run_identities
from .linalg import SingularMatrix
from .localfield import INF, DegreeCapExceeded, ScalarParseError, as_prime, format_scalar, scalar_parse
from .orders import (
    FAMILIES,
    NotIntegral,
    OrderFileError,
    build_dual,
    build_family,
    build_primal,
    check_conditions,
    discriminant_valuation,
    dual_pair_report,
    order_from_json,
    order_to_json,
    params_equivalent,
    params_from_mapping,
    pth_power_witness,
    verify_hopf_order,
)

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


def _dump(obj, out=None):
    out = out or sys.stdout
    out.write(json.dumps(obj, indent=2, default=_json_default) + "\n")


def _json_default(o):
    if o is INF:
        return "inf"
    raise TypeError(f"not serializable: {o!r}")


def _table(rows, cols, out=None):
    out = out or sys.stdout
    cells = [[str(r.get(c, "")) for c in cols] for r in rows]
    width = [max([len(c)] + [len(row[i]) for row in cells]) for i, c in enumerate(cols)]
    out.write("  ".join(c.ljust(w) for c, w in zip(cols, width)).rstrip() + "\n")
    for row in cells:
        out.write("  ".join(v.ljust(w) for v, w in zip(row, width)).rstrip() + "\n")


def parse_kv(text: str | None) -> dict:
    if not text:
        return {}
    out = {}
    for item in text.split(","):
        item = item.strip()
        if not item:
            continue
        if "=" not in item:
            raise InputError(f"parameter {item!r} is not of the form key=value")
        k, v = item.split("=", 1)
        out[k.strip()] = v.strip()
    return out


def parse_theta(text: str, p: int, n: int | None):
    if text.strip() == "identity":
        n = n or 3
        return [[scalar_parse("1" if i == j else "0", p) for j in range(n)] for i in range(n)]
    rows = [r for r in text.split(";") if r.strip()]
    return [[scalar_parse(v, p) for v in r.split(",")] for r in rows]


def _read_order(path):
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read order file {path}: {exc}") from exc
    return order_from_json(data)


def _require_deep(p, n, deep):
    if n >= 3 and p >= 3 and not deep:
        raise InputError(f"p={p}, n={n} verification is expensive; rerun with --deep")


# ---------------------------------------------------------------------------
# commands


def cmd_construct(args) -> int:
    p = as_prime(args.p)
    fam = args.family
    if fam is None:
        raise InputError("--family is required")
    if fam not in FAMILIES:
        raise InputError(f"unknown family {fam!r}")
    if fam == "koch":
        if not args.theta:
            raise InputError("--family koch needs --theta")
        pres = build_family(fam, p, theta=parse_theta(args.theta, p, args.n))
        conditions = None
    else:
        n = FAMILIES[fam][1]
        if args.n is not None and args.n != n:
            raise InputError(f"family {fam} has n={n}")
        params = params_from_mapping(p, parse_kv(args.params))
        pres = build_family(fam, p, params)
        conditions = check_conditions(params, n).to_json()
    order = order_to_json(pres)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            _dump(order, fh)
        payload = {"conditions": conditions}
    else:
        payload = {"order": order, "conditions": conditions}
    if args.format == "table" and conditions is not None:
        _table([{"condition": k, "holds": v} for k, v in conditions["checks"].items()],
               ["condition", "holds"])
    else:
        _dump(payload)
    return EXIT_OK


def _pth_power_section(pres):
    out = []
    if pres.generators is None:
        return out
    for k in range(1, pres.n + 1):
        coords = pth_power_witness(pres, k)
        nz = {lab: format_scalar(c) for lab, c in zip(pres.labels, coords) if c}
        neg = {lab: c.valuation() for lab, c in zip(pres.labels, coords)
               if c and c.valuation() < 0}
        out.append({"generator": f"u{k}", "coordinates": nz, "negative_valuations": neg})
    return out


def cmd_verify(args) -> int:
    pres = _read_order(args.order)
    _require_deep(pres.p, pres.n, args.deep)
    rep = verify_hopf_order(pres, exhaustive=not args.fast)
    out = rep.to_json()
    out["pth_powers"] = _pth_power_section(pres)
    if args.format == "table":
        _table([{"axiom": k, "status": v} for k, v in out["axioms"].items()], ["axiom", "status"])
        for w in rep.witnesses:
            sys.stdout.write(f"witness {w['axiom']}: {' * '.join(w['operands'])} -> "
                             f"{w['coordinate']} has valuation {w['valuation']}\n")
    else:
        _dump(out)
    return EXIT_OK if rep.all_pass else EXIT_FAIL


def cmd_dualize_pair(args) -> int:
    d = _read_order(args.dual)
    e = _read_order(args.primal)
    if d.ambient != "dual" or e.ambient != "group":
        raise InputError("dualize-pair takes a dual order file then a group order file")
    if (d.p, d.n) != (e.p, e.n):
        raise InputError(f"incompatible orders: (p={d.p}, n={d.n}) vs (p={e.p}, n={e.n})")
    _require_deep(d.p, d.n, args.deep)
    rep = dual_pair_report(d, e)
    if args.format == "table":
        _table([{"check": k, "value": v} for k, v in rep.items()], ["check", "value"])
    else:
        _dump(rep)
    return EXIT_OK if rep["confirmed"] else EXIT_FAIL


def _grid_params(n, bound, pool):
    ir = range(bound + 1)
    if n == 1:
        for i1 in ir:
            yield {"i1": i1}
    elif n == 2:
        for i1 in ir:
            for i2 in ir:
                for mu in pool:
                    yield {"i1": i1, "i2": i2, "mu": mu}
    else:
        for i1 in ir:
            for i2 in ir:
                for i3 in ir:
                    for mu in pool:
                        for al in pool:
                            for be in pool:
                                yield {"i1": i1, "i2": i2, "i3": i3, "mu": mu, "alpha": al,
                                       "beta": be}


def enumerate_row(job):
    """One grid row; top-level so worker processes can run it."""
    p, n, raw, exhaustive = job
    params = params_from_mapping(p, raw)
    cond = check_conditions(params, n)
    d = build_dual(params, n)
    e = build_primal(params, n)
    dv = verify_hopf_order(d, exhaustive=exhaustive).all_pass
    ev = verify_hopf_order(e, exhaustive=exhaustive).all_pass
    row = dict(params.to_json(n))
    row.update(conditions=cond.bitmask(), main=cond.main, mild=cond.mild,
               dual_verify="pass" if dv else "fail",
               primal_verify="pass" if ev else "fail",
               disc=discriminant_valuation(d))
    return row


def _class_ids(rows, p, n):
    """Union-find over rows sharing (i's, mu) with params_equivalent (alpha, beta)."""
    parent = list(range(len(rows)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    if n == 3:
        groups = {}
        for k, r in enumerate(rows):
            groups.setdefault((r["i1"], r["i2"], r["i3"], r["mu"]), []).append(k)
        for key, members in groups.items():
            i1, i2, i3, mu = key
            mu = scalar_parse(mu, p)
            pairs = [(scalar_parse(rows[k]["alpha"], p), scalar_parse(rows[k]["beta"], p))
                     for k in members]
            for x in range(len(members)):
                for y in range(x):
                    if find(members[x]) != find(members[y]) and \
                            params_equivalent(pairs[x], pairs[y], mu, i1, i2, i3):
                        parent[find(members[x])] = find(members[y])
    first = {}
    for k in range(len(rows)):
        first.setdefault(find(k), k)
    return [first[find(k)] for k in range(len(rows))]


def cmd_enumerate(args) -> int:
    p = as_prime(args.p)
    n = args.n or 3
    if n not in (1, 2, 3):
        raise InputError("enumerate supports n = 1, 2, 3")
    _require_deep(p, n, args.deep)
    if args.grid_bound is None or args.grid_bound < 0:
        raise InputError("--grid-bound must be a nonnegative integer")
    pool = [s.strip() for s in (args.pool or "").split(",") if s.strip()]
    if n > 1 and not pool:
        raise InputError("--pool is empty")
    # canonicalize literals so rows compare structurally
    pool = list(dict.fromkeys(format_scalar(scalar_parse(s, p)) for s in pool))
    jobs = [(p, n, raw, not args.fast) for raw in _grid_params(n, args.grid_bound, pool)]
    if args.jobs and args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as ex:
            rows = list(ex.map(enumerate_row, jobs, chunksize=8))
    else:
        rows = [enumerate_row(j) for j in jobs]
    for r, cid in zip(rows, _class_ids(rows, p, n)):
        r["class_id"] = cid
    if args.format == "table":
        cols = list(rows[0].keys()) if rows else []
        _table(rows, cols)
    else:
        _dump({"p": p, "n": n, "grid_bound": args.grid_bound, "pool": pool, "rows": rows})
    return EXIT_OK


def cmd_identities(args) -> int:
    ps = [as_prime(x) for x in (args.p_list or "2,3,5").split(",")] if args.p is None else [args.p]
    rows = []
    ok = True
    for p in ps:
        for name, passed in run_identities(p).items():
            rows.append({"p": p, "identity": name, "status": "pass" if passed else "fail"})
            ok = ok and passed
    if args.format == "table":
        _table(rows, ["p", "identity", "status"])
        for p in ps:
            k = sum(r["status"] == "pass" for r in rows if r["p"] == p)
            sys.stdout.write(f"p={p}: {k}/{len(IDENT_NAMES)} pass\n")
    else:
        _dump({"results": rows, "all_pass": ok})
    return EXIT_OK if ok else EXIT_FAIL


IDENT_NAMES = ("truncated_exp_product", "truncated_exp_iterated", "carry_square_vanishes")


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "table"), default="json")
    common.add_argument("--degree-cap", type=int, default=None)
    common.add_argument("--deep", action="store_true",
                        help="allow p >= 3, n = 3 verification")
    common.add_argument("--fast", action="store_true",
                        help="check closure on generators only")

    ap = argparse.ArgumentParser(prog="hopforge", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    c = sub.add_parser("construct", parents=[common])
    c.add_argument("--family", choices=sorted(FAMILIES))
    c.add_argument("--p", type=int, default=2)
    c.add_argument("--n", type=int)
    c.add_argument("--params")
    c.add_argument("--theta")
    c.add_argument("--output", "-o")
    c.set_defaults(func=cmd_construct)

    v = sub.add_parser("verify", parents=[common])
    v.add_argument("order")
    v.set_defaults(func=cmd_verify)

    d = sub.add_parser("dualize-pair", parents=[common])
    d.add_argument("dual")
    d.add_argument("primal")
    d.set_defaults(func=cmd_dualize_pair)

    e = sub.add_parser("enumerate", parents=[common])
    e.add_argument("--p", type=int, default=2)
    e.add_argument("--n", type=int)
    e.add_argument("--grid-bound", type=int, default=1)
    e.add_argument("--pool", default="0,1,1/t")
    e.add_argument("--jobs", type=int, default=1)
    e.set_defaults(func=cmd_enumerate)

    i = sub.add_parser("identities", parents=[common])
    i.add_argument("--p", type=int)
    i.add_argument("--primes", dest="p_list", help="comma-separated primes (default 2,3,5)")
    i.set_defaults(func=cmd_identities)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    if args.degree_cap is not None:
        os.environ["HOPFORGE_DEGREE_CAP"] = str(args.degree_cap)
    try:
        return args.func(args)
    except (InputError, OrderFileError, ScalarParseError, NotIntegral, ZeroDivisionError,
            ValueError, SingularMatrix, DegreeCapExceeded) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
