import json

import pytest

from matchscheme.cli import main, parse_range


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def test_enumerate(capsys):
    code, out = run(capsys, "enumerate", "--n", "2")
    assert code == 0 and out.splitlines()[0] == "1-2|3-4"
    assert len(run(capsys, "enumerate", "--n", "3")[1].splitlines()) == 15
    assert run(capsys, "enumerate", "--n", "7", "--count-only")[1].strip() == "135135"
    doc = json.loads(run(capsys, "enumerate", "--n", "2", "--format", "json")[1])
    assert doc["matchings"] == ["1-2|3-4", "1-3|2-4", "1-4|2-3"]


def test_enumerate_range(capsys):
    with pytest.raises(SystemExit):
        main(["enumerate", "--n", "8"])


def test_spectrum_csv_n4(capsys):
    code, out = run(capsys, "spectrum", "--n", "4")
    lines = out.splitlines()
    assert lines[0] == "partition,eigenvalue,multiplicity,depth,sign_consistent"
    values = {row.split(",")[0]: int(row.split(",")[1]) for row in lines[1:]}
    assert values == {"4": 60, "3 1": -10, "2 2": 5, "2 1 1": 2, "1 1 1 1": -3}


def test_spectrum_n_associate_n3(capsys):
    doc = json.loads(run(capsys, "spectrum", "--n", "3", "--graph", "n-associate", "--format", "json")[1])
    assert sorted(int(r["eigenvalue"]) for r in doc["rows"]) == [-2, 2, 8]


def test_spectrum_multiplicities_n5(capsys):
    doc = json.loads(run(capsys, "spectrum", "--n", "5", "--format", "json")[1])
    assert sum(int(r["multiplicity"]) for r in doc["rows"]) == 945


def test_zonal(capsys):
    out = run(capsys, "zonal", "--lam", "5,2,1")[1]
    assert out.splitlines()[1] == "5 2 1,8,1/840"
    out = run(capsys, "zonal", "--n", "3")[1]
    assert "2 1,3,-1/4" in out.splitlines()


def test_scheme(capsys):
    code, out = run(capsys, "scheme", "--n", "3")
    assert code == 0 and "3,3,1 1 1,8" in out.splitlines()
    code, out = run(capsys, "scheme", "--n", "3", "--check")
    assert code == 0 and "scheme.axioms.n3" in out


def test_ekr_verify_json(capsys):
    code, out = run(capsys, "ekr-verify", "--n", "4", "--graph", "n-associate", "--format", "json")
    doc = json.loads(out)
    assert code == 0
    rep = doc["reports"][0]
    assert rep["status"] == "pass" and rep["actual"] == {"alpha": "15", "families": "28"}
    assert "timings" not in doc


def test_ekr_verify_modes(capsys):
    assert run(capsys, "ekr-verify", "--n", "4", "--mode", "bound")[0] == 0
    assert run(capsys, "ekr-verify", "--n", "4", "--mode", "exact")[0] == 0
    assert run(capsys, "ekr-verify", "--n", "4", "--t", "2")[0] == 0


def test_inconclusive_exit_code(capsys):
    code, out = run(capsys, "ekr-verify", "--n", "4", "--budget", "5")
    assert code == 2 and "INCONCLUSIVE" in out


@pytest.mark.parametrize("check", ["rank", "cuts", "membership", "faces"])
def test_polytope(capsys, check):
    assert run(capsys, "polytope", "--n", "4", "--check", check)[0] == 0


def test_polytope_membership_vector(capsys):
    x = ",".join(["1/5"] * 15)
    code, out = run(capsys, "polytope", "--n", "3", "--check", "membership", "--x", x, "--format", "json")
    assert json.loads(out)["reports"][0]["actual"] is True


def test_conjectures_suite(capsys):
    code, out = run(capsys, "verify", "--suite", "conjectures", "--n", "3..6", "--format", "json")
    reports = json.loads(out)["reports"]
    assert code == 0 and len(reports) == 8
    assert all(r["status"] == "pass" for r in reports)


def test_verify_scheme_n3(capsys):
    code, out = run(capsys, "verify", "--suite", "scheme", "--n", "3")
    assert code == 0 and "[        PASS] scheme.axioms.n3" in out


def test_verify_ekr_includes_extremal(capsys):
    code, out = run(capsys, "verify", "--suite", "ekr", "--n", "4", "--format", "json")
    claims = {r["claim"]: r["status"] for r in json.loads(out)["reports"]}
    assert claims["ekr.extremal.gamma.n4"] == "pass"
    assert code == 0


def test_verify_fail_exit_code(capsys):
    # the strict zonal chain ties at n = 3
    code, out = run(capsys, "verify", "--suite", "ekr", "--n", "3")
    assert code == 1 and "FAIL] spectrum.inequality-chain.n3" in out


def test_reports_are_reproducible(capsys, tmp_path):
    argv = ["verify", "--suite", "polytope", "--n", "3..4", "--format", "json", "--cache-dir", str(tmp_path)]
    first = run(capsys, *argv)[1]
    second = run(capsys, *argv)[1]
    assert first == second
    timed = json.loads(run(capsys, *argv, "--timings")[1])
    assert set(timed["timings"]) == {r["claim"] for r in timed["reports"]}
    timed.pop("timings")
    assert timed == json.loads(first)


def test_cache_dir_flag_writes_entry(capsys, tmp_path):
    run(capsys, "spectrum", "--n", "3", "--cache-dir", str(tmp_path))
    assert (tmp_path / "scheme-n3.json").exists()
    run(capsys, "spectrum", "--n", "2", "--cache-dir", str(tmp_path / "none"), "--no-cache")
    assert not (tmp_path / "none").exists()


def test_parse_range():
    assert parse_range("3..6") == [3, 4, 5, 6]
    assert parse_range("4") == [4]
