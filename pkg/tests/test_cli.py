import json

import pytest

from hopforge.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def construct(tmp_path, capsys, family, params="", p=2, name=None):
    path = tmp_path / (name or f"{family}.json")
    argv = ["construct", "--family", family, "--p", str(p), "-o", str(path)]
    if params:
        argv += ["--params", params]
    code, out, _ = run(capsys, *argv)
    assert code == 0
    return path, json.loads(out)


GOOD = "i1=2,i2=1,i3=1,mu=1/t,alpha=1/t,beta=1"


def test_construct_e3(tmp_path, capsys):
    path, out = construct(tmp_path, capsys, "e3", GOOD)
    assert out["conditions"]["all"] is True
    assert all(out["conditions"]["checks"].values())
    order = json.loads(path.read_text())
    assert order == {"p": 2, "n": 3, "ambient": "group", "family": "e3",
                     "params": {"i1": 2, "i2": 1, "mu": "1/t", "i3": 1, "alpha": "1/t", "beta": "1"}}


def test_construct_koch_identity(capsys):
    code, out, _ = run(capsys, "construct", "--family", "koch", "--theta", "identity", "--n", "2")
    assert code == 0
    order = json.loads(out)["order"]
    assert order["theta"] == [["1", "0"], ["0", "1"]]


def test_construct_dual2_violation(capsys):
    code, out, _ = run(capsys, "construct", "--family", "dual2", "--p", "3",
                       "--params", "i1=0,i2=5,mu=1/t")
    assert code == 0
    cond = json.loads(out)["conditions"]
    assert cond["checks"]["wp_mu"] is False and cond["main"] is False


def test_construct_table(capsys):
    code, out, _ = run(capsys, "construct", "--family", "dual3", "--params", GOOD,
                       "--format", "table")
    assert code == 0
    assert out.splitlines()[0].split() == ["condition", "holds"]
    assert len(out.splitlines()) == 7


@pytest.mark.parametrize("argv", [
    ["construct", "--family", "dual3", "--params", "mu=1/"],
    ["construct", "--family", "dual3", "--params", "bogus"],
    ["construct", "--family", "dual3", "--params", "gamma=1"],
    ["construct", "--family", "dual3", "--p", "4"],
    ["construct", "--family", "dual3", "--n", "2"],
    ["construct", "--family", "koch"],
    ["construct", "--family", "koch", "--theta", "1/t"],
    ["construct", "--family", "koch", "--theta", "1,1;0,1"],
    ["construct"],
    ["construct", "--family", "nope"],
    ["frobnicate"],
    ["verify", "/nonexistent/order.json"],
    ["enumerate", "--pool", ""],
    ["enumerate", "--p", "3"],
])
def test_input_errors_exit_2(capsys, argv):
    code, _, _ = run(capsys, *argv)
    assert code == 2


def test_verify_standard_and_good(tmp_path, capsys):
    for fam, params in (("dual3", ""), ("e3", ""), ("dual3", GOOD), ("e3", GOOD)):
        path, _ = construct(tmp_path, capsys, fam, params, name=f"{fam}{len(params)}.json")
        code, out, _ = run(capsys, "verify", str(path))
        rep = json.loads(out)
        assert code == 0 and rep["all_pass"] and rep["mode"] == "exhaustive"


def test_verify_violation(tmp_path, capsys):
    path, _ = construct(tmp_path, capsys, "dual3", "i1=1,i2=3,mu=1/t")
    code, out, _ = run(capsys, "verify", str(path))
    assert code == 1
    rep = json.loads(out)
    assert rep["axioms"]["algebra_closed"] == "fail"
    u1 = rep["pth_powers"][0]
    assert u1["generator"] == "u1"
    assert u1["negative_valuations"] == {"m(0,1,0)": -3}
    code, out, _ = run(capsys, "verify", str(path), "--format", "table")
    assert code == 1 and "witness algebra_closed" in out


def test_verify_fast_mode(tmp_path, capsys):
    path, _ = construct(tmp_path, capsys, "e3", GOOD)
    code, out, _ = run(capsys, "verify", str(path), "--fast")
    assert code == 0 and json.loads(out)["mode"] == "generators"


def test_verify_malformed_file(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text("{not json")
    assert run(capsys, "verify", str(path))[0] == 2
    path.write_text(json.dumps({"p": 2, "family": "dual3", "params": {"mu": "1/(t-t)"}}))
    assert run(capsys, "verify", str(path))[0] == 2


def test_verify_deep_gate(tmp_path, capsys):
    path, _ = construct(tmp_path, capsys, "dual3", "i1=1", p=3)
    code, _, err = run(capsys, "verify", str(path))
    assert code == 2 and "--deep" in err
    assert run(capsys, "verify", str(path), "--deep", "--fast")[0] == 0


def test_degree_cap_flag(tmp_path, capsys, monkeypatch):
    # the flag writes the env var; register it so teardown removes it
    monkeypatch.setenv("HOPFORGE_DEGREE_CAP", "4096")
    path, _ = construct(tmp_path, capsys, "dual2", "i1=3,i2=2,mu=1/t^2+t^3", p=3)
    code, _, err = run(capsys, "verify", str(path), "--degree-cap", "1")
    assert code == 2 and "exceeds cap" in err


def test_dualize_pair(tmp_path, capsys):
    d, _ = construct(tmp_path, capsys, "dual3", "i1=1,i2=1,i3=1")
    e, _ = construct(tmp_path, capsys, "e3", "i1=1,i2=1,i3=1")
    code, out, _ = run(capsys, "dualize-pair", str(d), str(e))
    rep = json.loads(out)
    assert code == 0 and rep["confirmed"]
    assert rep["disc_dual"] == rep["disc_primal_dual"] == 24


def test_dualize_pair_standard(tmp_path, capsys):
    d, _ = construct(tmp_path, capsys, "dual2")
    e, _ = construct(tmp_path, capsys, "e2")
    assert run(capsys, "dualize-pair", str(d), str(e))[0] == 0


def test_dualize_pair_mismatch(tmp_path, capsys):
    d, _ = construct(tmp_path, capsys, "dual3", "i1=1,i2=1,i3=1")
    e, _ = construct(tmp_path, capsys, "e3", "i1=2,i2=1,i3=1")
    code, out, _ = run(capsys, "dualize-pair", str(d), str(e))
    rep = json.loads(out)
    assert code == 1
    assert (rep["disc_dual"], rep["disc_primal_dual"]) == (24, 32)
    # wrong order of files, or incompatible ranks
    assert run(capsys, "dualize-pair", str(e), str(d))[0] == 2
    e2, _ = construct(tmp_path, capsys, "e2")
    assert run(capsys, "dualize-pair", str(d), str(e2))[0] == 2


def test_enumerate_small_grid(capsys):
    code, out, _ = run(capsys, "enumerate", "--p", "2", "--grid-bound", "1", "--pool", "0,1,1/t")
    assert code == 0
    rows = json.loads(out)["rows"]
    assert len(rows) == 8 * 27
    for r in rows:
        if r["main"]:
            assert r["dual_verify"] == "pass"
            if r["mild"]:
                assert r["primal_verify"] == "pass"
    zero = next(r for r in rows if (r["i1"], r["i2"], r["i3"], r["mu"], r["alpha"], r["beta"])
                == (0, 0, 0, "0", "0", "0"))
    assert zero["disc"] == 0 and zero["conditions"] == "111111"
    by_key = {(r["i1"], r["i2"], r["i3"], r["mu"], r["alpha"], r["beta"]): r for r in rows}
    # (mu, m mu, -m) shares a class with (mu, 0, 0); at p = 2, m = 1 gives (mu, mu, 1)
    for i1, i2, i3 in [(0, 0, 0), (1, 0, 1), (1, 1, 1)]:
        for mu in ("1", "1/t"):
            a = by_key[(i1, i2, i3, mu, mu, "1")]
            b = by_key[(i1, i2, i3, mu, "0", "0")]
            assert a["class_id"] == b["class_id"]


def test_enumerate_deterministic_and_parallel(capsys):
    argv = ["enumerate", "--p", "2", "--n", "2", "--grid-bound", "2", "--pool", "0,1/t,1+t"]
    c1, o1, _ = run(capsys, *argv)
    c2, o2, _ = run(capsys, *argv)
    c3, o3, _ = run(capsys, *argv, "--jobs", "2")
    assert c1 == c2 == c3 == 0
    assert o1 == o2 == o3


def test_enumerate_table(capsys):
    code, out, _ = run(capsys, "enumerate", "--n", "1", "--grid-bound", "2", "--format", "table")
    assert code == 0
    lines = out.splitlines()
    assert lines[0].split()[0] == "i1" and len(lines) == 4


def test_identities(capsys):
    code, out, _ = run(capsys, "identities", "--format", "table")
    assert code == 0
    for p in (2, 3, 5):
        assert f"p={p}: 3/3 pass" in out
    code, out, _ = run(capsys, "identities", "--p", "3")
    assert code == 0 and json.loads(out)["all_pass"]
    assert run(capsys, "identities", "--primes", "2,4")[0] == 2


def test_construct_deterministic(capsys):
    argv = ["construct", "--family", "e3", "--params", GOOD]
    assert run(capsys, *argv)[1] == run(capsys, *argv)[1]
