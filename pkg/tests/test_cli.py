import json

from equisurf.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_eval_json(capsys):
    code, out, _ = run(capsys, "eval", "-p", "3", "S(1) +R(1) +R(1)")
    assert code == 0
    d = json.loads(out)
    assert (d["beta"], d["fixed_points"]) == (8, 6)
    assert d["rotations"] == [1, 1, 1, 2, 2, 2]


def test_eval_polygon(capsys):
    code, out, _ = run(capsys, "eval", "-p", "3", "S(1) +TR(base-south)")
    assert code == 0
    d = json.loads(out)
    assert (d["beta"], d["fixed_points"]) == (2, 3)


def test_eval_parse_error_exit_2(capsys):
    code, _, err = run(capsys, "eval", "-p", "3", "S(1) +R(1) wat")
    assert code == 2
    assert "position" in err


def test_eval_surgery_error_exit_3(capsys):
    code, _, err = run(capsys, "eval", "-p", "3", "S(1) +MBF")
    assert code == 3
    assert "step 0" in err


def test_orbits_expect_ok(capsys):
    code, out, _ = run(capsys, "orbits", "-p", "3", "closed-nonorientable:3",
                       "--expect", "1", "--backend", "numpy")
    assert code == 0
    d = json.loads(out)
    assert d["nonzero_orbits"] == 1 and d["rank"] == 2


def test_orbits_expect_mismatch(capsys):
    code, _, err = run(capsys, "orbits", "-p", "5", "closed-nonorientable:2",
                       "--expect", "7", "--backend", "numpy")
    assert code != 0
    assert "expected 7" in err


def test_orbits_budget_exit_4(capsys):
    code, _, err = run(capsys, "orbits", "-p", "7", "closed-orientable:3",
                       "--budget", "100", "--backend", "numpy")
    assert code == 4


def test_orbits_more_expectations(capsys):
    code, out, _ = run(capsys, "orbits", "-p", "5", "closed-nonorientable:2",
                       "--expect", "2", "--backend", "numpy")
    assert code == 0
    code, out, _ = run(capsys, "orbits", "-p", "3", "boundary:2",
                       "--expect", "2", "--backend", "numpy")
    assert code == 0


def test_normalize(capsys):
    code, out, _ = run(capsys, "normalize", "-p", "3", "N2free(1) +R(1)")
    assert code == 0
    d = json.loads(out)
    assert d["families"] == [{"kind": "NSph", "params": [0, 2]}]


def test_classify(capsys):
    rec = '{"p":3,"orientable":false,"beta":8,"fixed_points":3,"rotations":null}'
    code, out, _ = run(capsys, "classify", rec)
    assert code == 0
    d = json.loads(out)
    assert d["families"] == [{"kind": "NProj", "params": [1, 1]}] and d["unique"]


def test_atlas_table(capsys):
    code, out, _ = run(capsys, "atlas", "-p", "3", "--beta-max", "2", "--table")
    assert code == 0
    assert "Poly(1, 0, 0)" in out and "NFree(0)" in out


def test_atlas_json_deterministic(capsys):
    code, out1, _ = run(capsys, "atlas", "-p", "3", "--beta-max", "8")
    code, out2, _ = run(capsys, "atlas", "-p", "3", "--beta-max", "8")
    assert out1 == out2
    rows = json.loads(out1)
    amb = [r for r in rows if r["ambiguous"]]
    assert {(r["beta"], r["fixed_points"]) for r in amb} == {(8, 6)}


def test_oracle_check_examples(capsys):
    code, out, _ = run(capsys, "oracle-check", "-p", "3", "examples")
    assert code == 0
    assert "PASS" in out


def test_oracle_check_ding(capsys):
    code, out, _ = run(capsys, "oracle-check", "-p", "3", "ding")
    assert code == 0
    assert "(1, 1, 1, 1, 1, 1)" in out and "(1, 1, 1, 2, 2, 2)" in out


def test_oracle_check_mismatch_exit_5(capsys, monkeypatch):
    import equisurf.oracle.checks as checks

    monkeypatch.setattr(
        checks, "run_oracle_check", lambda *a, **kw: (["forced mismatch"], ["FAIL"])
    )
    code, _, err = run(capsys, "oracle-check", "-p", "3", "examples")
    assert code == 5
    assert "forced mismatch" in err


def test_backend_env_flag(monkeypatch):
    from equisurf.orbits.engine import backend_name

    monkeypatch.setenv("EQUISURF_BACKEND", "numpy")
    assert backend_name() == "numpy"
    monkeypatch.setenv("EQUISURF_BACKEND", "numba")
    assert backend_name() == "numba"


def test_budget_env_flag(capsys, monkeypatch):
    monkeypatch.setenv("EQUISURF_BUDGET", "10")
    code, _, _ = run(capsys, "orbits", "-p", "3", "closed-nonorientable:4", "--backend", "numpy")
    assert code == 4
