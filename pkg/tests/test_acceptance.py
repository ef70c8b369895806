"""Acceptance suite: one test per criterion, each printing a pass/fail line
in the terminal summary (see conftest)."""
import contextlib
import io
import itertools
import json
import random
import time

import pytest

from hopforge.cli import main
from hopforge.groupalg import (
    DualElement,
    GroupAlgebraElement,
    TensorElement,
    pair,
    pair_tensors,
    xi_i,
)
from hopforge.identitylab import verify_identity_basic, verify_identity_iterated, verify_q_square
from hopforge.localfield import LocalScalar, format_scalar, scalar_parse, wp, zero
from hopforge.orders import (
    DualFamilyParams,
    OrderPresentation,
    build_dual,
    build_primal,
    check_conditions,
    delta_table_holds,
    discriminant_valuation,
    dualize,
    koch_matrix,
    koch_order,
    koch_relations_hold,
    order_to_json,
    orders_equal,
    pairing_matrix,
    params_equivalent,
    pth_power_witness,
    verify_hopf_order,
)

GRID_POOL = ("0", "1", "1/t", "1/t^2", "1+1/t")
SEED = 20240517


def T(p, k):
    return LocalScalar.t_power(p, k)


def rand_laurent(rng, p, lo, hi, support=4):
    x = zero(p)
    for k in rng.sample(range(lo, hi + 1), rng.randint(0, support)):
        x = x + T(p, k) * rng.randint(1, p - 1)
    return x


def detail(request, text):
    request.node.user_properties.append(("detail", text))


def grid(p, bound, pool):
    vals = [scalar_parse(s, p) for s in pool]
    for i1, i2, i3 in itertools.product(range(bound + 1), repeat=3):
        for mu, al, be in itertools.product(vals, repeat=3):
            yield DualFamilyParams(p, i1, i2, i3, mu, al, be)


def survey(p, bound, pool):
    """Build every grid tuple and verify those passing the main conditions.

    Shared by criteria 4-6; violating tuples are verified through the CLI in
    criterion 5.
    """
    rows = []
    t0 = time.perf_counter()
    for prm in grid(p, bound, pool):
        cond = check_conditions(prm, 3)
        d, e = build_dual(prm, 3), build_primal(prm, 3)
        ok = cond.main
        rows.append({
            "params": prm, "cond": cond, "dual": d, "primal": e,
            "dual_ok": ok and verify_hopf_order(d).all_pass,
            "primal_ok": ok and verify_hopf_order(e).all_pass,
        })
    return rows, time.perf_counter() - t0


@pytest.fixture(scope="module")
def p2_grid():
    return survey(2, 2, GRID_POOL)


def soundness_failures(rows):
    bad = []
    for r in rows:
        if r["cond"].main and not r["dual_ok"]:
            bad.append(("dual", r["params"]))
        if r["cond"].main and r["cond"].mild and not r["primal_ok"]:
            bad.append(("primal", r["params"]))
    return bad


def violates_strictly(cond):
    return not (cond.checks["wp_mu"] and cond.checks["wp_alpha_beta"] and cond.checks["wp_beta"])


def negative_witness(d):
    for k in range(1, d.n + 1):
        if any(c and c.valuation() < 0 for c in pth_power_witness(d, k)):
            return True
    return False


def duality_holds(r):
    d, e = r["dual"], r["primal"]
    prm = r["params"]
    _, uni = pairing_matrix(d, e)
    disc = discriminant_valuation(d)
    want = prm.p**3 * (prm.p - 1) * (prm.i1 + prm.i2 + prm.i3)
    return uni and delta_table_holds(d, e) and disc == want and orders_equal(dualize(e), d)


# ---------------------------------------------------------------------------


@pytest.mark.criterion(1, "identity suite for p in {2,3,5}")
def test_criterion_01_identities(request):
    t0 = time.perf_counter()
    res = {p: (verify_identity_basic(p), verify_identity_iterated(p), verify_q_square(p))
           for p in (2, 3, 5)}
    dt = time.perf_counter() - t0
    detail(request, f"{dt:.2f}s")
    assert all(all(v) for v in res.values()), res
    assert dt < 1.0


@pytest.mark.criterion(2, "Koch matrix examples and p-th power relations")
def test_criterion_02_koch(request):
    rng = random.Random(SEED)
    relations = 0
    for p in (2, 3):
        for i in range(6):
            a, ok = koch_matrix([[T(p, i)]])
            assert a == [[T(p, (p - 1) * i)]] and ok
            assert koch_relations_hold(koch_order([[T(p, i)]]), a)
        for _ in range(20):
            i, j = rng.randint(0, 4), rng.randint(0, 4)
            th = rand_laurent(rng, p, -3, 4)
            a, ok = koch_matrix([[T(p, i), zero(p)], [th, T(p, j)]])
            want = T(p, -j) * th**p - T(p, (p - 1) * i - j) * th
            assert a[1][0] == want
            assert format_scalar(a[1][0]) == format_scalar(want)
            if ok:
                assert koch_relations_hold(koch_order([[T(p, i), zero(p)], [th, T(p, j)]]), a)
                relations += 1
        # admissible rank-3 triangular matrices from valid family tuples
        for prm in grid(p, 1, ("0", "1", "t")):
            if not check_conditions(prm, 3).main:
                continue
            th = [[T(p, prm.i1), zero(p), zero(p)],
                  [-prm.mu * T(p, prm.i1), T(p, prm.i2), zero(p)],
                  [-prm.alpha * T(p, prm.i1), -prm.beta * T(p, prm.i2), T(p, prm.i3)]]
            a, ok = koch_matrix(th)
            if ok:
                assert koch_relations_hold(koch_order(th), a)
                relations += 1
    detail(request, f"{relations} relation checks")
    assert relations > 0


@pytest.mark.criterion(3, "n=2 bridge: A integral iff family condition")
def test_criterion_03_bridge(request):
    rng = random.Random(SEED + 3)
    counts = {True: 0, False: 0}
    mismatches = []
    for k in range(100):
        p = (2, 3)[k % 2]
        i, j = rng.randint(-1, 4), rng.randint(-1, 4)
        th = rand_laurent(rng, p, -2, 6)
        _, integral = koch_matrix([[T(p, i), zero(p)], [th, T(p, j)]])
        mu = -th * T(p, -i)
        predicted = i >= 0 and j >= 0 and wp(mu).valuation() >= j - p * i
        counts[predicted] += 1
        if integral != predicted:
            mismatches.append((p, i, j, format_scalar(th)))
    detail(request, f"{counts[True]} admissible, {counts[False]} not, {len(mismatches)} discrepancies")
    assert not mismatches
    assert counts[True] and counts[False]


@pytest.mark.criterion(4, "family soundness on the p=2 grid")
def test_criterion_04_soundness(request, p2_grid):
    rows, dt = p2_grid
    assert len(rows) == 27 * 125
    n_main = sum(r["cond"].main for r in rows)
    n_both = sum(r["cond"].main and r["cond"].mild for r in rows)
    bad = soundness_failures(rows)
    detail(request, f"{len(rows)} tuples, {n_main} valid dual, {n_both} valid primal, {dt:.1f}s")
    assert not bad, bad[:5]
    assert dt < 120


@pytest.mark.criterion(5, "necessity witnesses and verify exit code 1")
def test_criterion_05_necessity(request, p2_grid, tmp_path):
    rows, _ = p2_grid
    path = tmp_path / "order.json"
    missing, wrong_exit = [], []
    n = 0
    for r in rows:
        if not violates_strictly(r["cond"]):
            continue
        n += 1
        d = r["dual"]
        if not negative_witness(d):
            missing.append(r["params"])
        path.write_text(json.dumps(order_to_json(d)))
        with contextlib.redirect_stdout(io.StringIO()):
            code = main(["verify", str(path)])
        if code != 1:
            wrong_exit.append((r["params"], code))
    detail(request, f"{n} violating tuples")
    assert n > 0
    assert not missing, missing[:5]
    assert not wrong_exit, wrong_exit[:5]


@pytest.mark.criterion(6, "duality: unimodular pairing, delta tables, discriminant, dualize")
def test_criterion_06_duality(request, p2_grid):
    rows, _ = p2_grid
    passing = [r for r in rows if r["dual_ok"] and r["primal_ok"]]
    assert any(r["cond"].mild for r in passing)
    bad = [r["params"] for r in passing if not duality_holds(r)]
    # frozen instance from the formula: p^3 (p-1)(1+1+1) at p=2
    d = build_dual(DualFamilyParams(2, 1, 1, 1), 3)
    assert discriminant_valuation(d) == 24
    detail(request, f"{len(passing)} all-pass tuples")
    assert not bad, bad[:5]


@pytest.mark.criterion(7, "lower-rank discriminants")
def test_criterion_07_low_rank(request):
    checked = 0
    for p in (2, 3, 5):
        for i in range(4):
            assert discriminant_valuation(build_dual(DualFamilyParams(p, i), 1)) == p * (p - 1) * i
            checked += 1
    for p in (2, 3):
        for i1, i2 in itertools.product(range(4), repeat=2):
            for mu in ("0", "1", "t", "1/t"):
                prm = DualFamilyParams(p, i1, i2, mu=scalar_parse(mu, p))
                if not check_conditions(prm, 2).main:
                    continue
                disc = discriminant_valuation(build_dual(prm, 2))
                assert disc == p * p * (p - 1) * (i1 + i2), (prm, disc)
                checked += 1
    detail(request, f"{checked} orders")


def _series(x, upto):
    """Laurent coefficients {k: c} of x in F_p((t)) for exponents k < upto."""
    p = x.p
    if x.is_zero():
        return {}
    vn = next(k for k, c in enumerate(x.num) if c)
    vd = next(k for k, c in enumerate(x.den) if c)
    num, den = x.num[vn:], x.den[vd:]
    start = vn - vd
    inv0 = pow(den[0], -1, p)
    out, rem = {}, list(num) + [0] * max(0, upto - start)
    for k in range(max(0, upto - start)):
        c = rem[k] * inv0 % p
        if c:
            out[start + k] = c
            for j, d in enumerate(den):
                if k + j < len(rem):
                    rem[k + j] = (rem[k + j] - c * d) % p
    return out


def _oracle_equivalent(a, b, mu, i1, i2, i3):
    """Series oracle: the difference lies in F_p(mu,-1) + (F_p + p^{i3-i1}, p^{i3-i2})."""
    p = mu.p
    ka, kb = i3 - i1, i3 - i2
    sa = [_series(x, ka) for x in (a[0], b[0], mu)]
    sb = [_series(x, kb) for x in (a[1], b[1])]
    for m in range(p):
        # beta - beta' + m must vanish below kb
        db = {k: (sb[0].get(k, 0) - sb[1].get(k, 0) + (m if k == 0 else 0)) % p
              for k in set(sb[0]) | set(sb[1]) | {0} if k < kb}
        if any(db.values()):
            continue
        # alpha - alpha' - m mu below ka, constant term absorbed by c
        da = {k: (sa[0].get(k, 0) - sa[1].get(k, 0) - m * sa[2].get(k, 0)) % p
              for k in set(sa[0]) | set(sa[1]) | set(sa[2]) if k < ka and k != 0}
        if not any(da.values()):
            return True
    return False


EQ_POOLS = {
    2: (("0", "1", "1/t", "1/t+1/t^2", "t+1/t"), ("0", "1", "1/t", "t", "1+1/t^2")),
    3: (("0", "2", "1/t", "2/t+t", "1+1/t^2"), ("0", "1", "2", "1/t", "2+t")),
}


@pytest.mark.criterion(8, "equivalence collapse and params_equivalent classes")
def test_criterion_08_equivalence(request):
    equal_checked = unequal = 0
    pairs_checked = 0
    for p in (2, 3):
        for mus in ("1/t", "1+1/t^2", "t"):
            mu = scalar_parse(mus, p)
            for i1, i2, i3 in itertools.product(range(3), repeat=3):
                base = DualFamilyParams(p, i1, i2, i3, mu)
                x1, x2, x3 = (xi_i(p, 3, k) for k in (1, 2, 3))
                for m in range(1, p):
                    mm = LocalScalar.from_int(p, m)
                    tw = build_dual(DualFamilyParams(p, i1, i2, i3, mu, mu * mm, -mm), 3)
                    shifted = x2 + x3.scale(mm)
                    display = OrderPresentation("dual", p, 3, generators=(
                        (x1 - shifted.scale(mu)).scale(T(p, i1)),
                        shifted.scale(T(p, i2)),
                        x3.scale(T(p, i3))))
                    assert orders_equal(tw, display)
                    if check_conditions(base, 3).mild:
                        assert orders_equal(tw, build_dual(base, 3)), (p, mus, i1, i2, i3, m)
                        equal_checked += 1
                    else:
                        unequal += not orders_equal(tw, build_dual(base, 3))
                    assert params_equivalent((mu * mm, -mm), (zero(p), zero(p)), mu, i1, i2, i3)
        # 5 x 5 sample grid of (alpha, beta) against the series oracle
        apool, bpool = EQ_POOLS[p]
        sample = [(scalar_parse(a, p), scalar_parse(b, p)) for a in apool for b in bpool]
        for mus in ("1/t", "1+1/t^2", "0"):
            mu = scalar_parse(mus, p)
            for i1, i2, i3 in [(0, 0, 0), (1, 1, 1), (2, 1, 1), (1, 2, 3), (0, 2, 1), (3, 3, 0), (2, 2, 4)]:
                for a, b in itertools.product(sample, repeat=2):
                    got = params_equivalent(a, b, mu, i1, i2, i3)
                    assert got == _oracle_equivalent(a, b, mu, i1, i2, i3), (p, mus, i1, i2, i3, a, b)
                    pairs_checked += 1
    detail(request, f"{equal_checked} collapses, {pairs_checked} pairs vs oracle, "
                    f"{unequal} unequal without mild conditions")


def _random_element(rng, p, n, cls):
    c = []
    for _ in range(p**n):
        if rng.random() < 0.5:
            c.append(zero(p))
        else:
            c.append(rand_laurent(rng, p, -2, 2, support=2) + rng.randint(0, p - 1))
    return cls(p, n, c)


@pytest.mark.criterion(9, "Hopf pairing axioms, 200 random triples per (p, n)")
def test_criterion_09_pairing(request):
    rng = random.Random(SEED + 9)
    total = 0
    for p, n in itertools.product((2, 3), (1, 2, 3)):
        for _ in range(200):
            f, h = (_random_element(rng, p, n, DualElement) for _ in range(2))
            x, y = (_random_element(rng, p, n, GroupAlgebraElement) for _ in range(2))
            assert pair(f * h, x) == pair_tensors(TensorElement.pure(f, h), x.delta())
            assert pair_tensors(f.delta(), TensorElement.pure(x, y)) == pair(f, x * y)
            total += 1
    detail(request, f"{total} triples")


@pytest.mark.criterion(10, "deep profile: p=3 grid under --deep")
def test_criterion_10_deep(request, tmp_path):
    t0 = time.perf_counter()
    buf = io.StringIO()
    with contextlib.redirect_stdout(buf):
        code = main(["enumerate", "--p", "3", "--grid-bound", "1", "--pool", "0,1/t", "--deep"])
    dt = time.perf_counter() - t0
    assert code == 0
    rows = json.loads(buf.getvalue())["rows"]
    assert len(rows) == 8 * 8
    bad = [r for r in rows
           if (r["main"] and r["dual_verify"] != "pass")
           or (r["main"] and r["mild"] and r["primal_verify"] != "pass")]
    # the same necessity semantics as on the p=2 grid
    no_witness = []
    for r in rows:
        prm = DualFamilyParams(3, r["i1"], r["i2"], r["i3"], *(scalar_parse(r[k], 3)
                                                                for k in ("mu", "alpha", "beta")))
        cond = check_conditions(prm, 3)
        if violates_strictly(cond) and not negative_witness(build_dual(prm, 3)):
            no_witness.append(prm)
        if r["main"]:
            assert r["disc"] == 27 * 2 * (prm.i1 + prm.i2 + prm.i3)
    n_main = sum(r["main"] for r in rows)
    detail(request, f"{len(rows)} tuples, {n_main} valid, {dt:.0f}s")
    assert not bad, bad[:3]
    assert not no_witness
    assert dt < 15 * 60
