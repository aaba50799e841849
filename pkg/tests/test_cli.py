import json
import os

from sympair.cli import run

ALG = os.path.join(os.path.dirname(__file__), "..", "algebras")


def alg(name):
    return os.path.join(ALG, name)


def test_validate(capsys):
    code = run(["validate", alg("sl2.json")])
    out = capsys.readouterr().out
    assert code == 0
    assert "dim k = 1" in out and "dim p = 2" in out


def test_validate_bad_file(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({
        "name": "bad", "basis": ["a", "b", "c"],
        "brackets": {"[0,1]": {"0": "1"}, "[0,2]": {"2": "1"}, "[1,2]": {"2": "1"}},
        "sigma": [["1", "0", "0"], ["0", "1", "0"], ["0", "0", "1"]],
    }))
    code = run(["validate", str(bad)])
    err = capsys.readouterr().err
    assert code == 2
    assert "Jacobi" in err


def test_usage_error():
    assert run(["no-such-command"]) == 1


def test_star_rou_omega(capsys):
    code = run(["star-rou", alg("sl2.json"), "--p", "omega", "--q", "omega"])
    out = capsys.readouterr().out.strip()
    assert code == 0
    assert out == "omega^2 - 16/15"


def test_star_cf_matches(capsys):
    run(["star-cf", alg("sl2.json"), "--p", "omega", "--q", "omega"])
    out = capsys.readouterr().out.strip()
    assert out == "omega^2 - 16/15"


def test_star_rou_unknown_name(capsys):
    code = run(["star-rou", alg("sl2.json"), "--p", "nope", "--q", "omega"])
    assert code == 2
    assert "no definition" in capsys.readouterr().err


def test_bch_order1(capsys):
    code = run(["bch", "--order", "1"])
    out = capsys.readouterr().out
    assert code == 0
    assert "1 * X" in out and "1 * Y" in out


def test_zsym_even_order(capsys):
    run(["zsym", "--order", "4"])
    out = capsys.readouterr().out
    # even-length components vanish: only orders 1 and 3 print
    assert "[X,[X,Y]]" in out and "[X,Y]]" in out


def test_invariants_solvable(capsys):
    code = run(["invariants", alg("solvable4.json"), "--degree", "2"])
    out = capsys.readouterr().out
    assert code == 0
    assert "dimension 2" in out


def test_duflo_check(capsys):
    assert run(["duflo-check", alg("sl2.json"), "--degree", "3"]) == 0
    assert "holds" in capsys.readouterr().out


def test_hc_project(capsys):
    code = run(["hc-project", alg("sl2.json"), "--poly", "omega"])
    out = capsys.readouterr().out
    assert code == 0
    assert "H^2" in out and "weyl-invariant: True" in out


def test_char(tmp_path, capsys):
    pol = tmp_path / "pol.json"
    pol.write_text(json.dumps({"b": [["1", "1", "0"], ["0", "0", "1"]]}))
    code = run(["char", alg("heisenberg3.json"), "--poly", "zz", "--f", "z", "--pol", str(pol)])
    out = capsys.readouterr().out.strip()
    assert code == 0 and out == "1"


def test_densities(capsys):
    code = run(["densities", alg("sl2.json"), "--kind", "J_half", "--order", "4"])
    out = capsys.readouterr().out
    assert code == 0
    assert "1/3" in out and "2/45" in out


def test_graph_weight_and_json_roundtrip(tmp_path, capsys):
    report_path = tmp_path / "report.json"
    code = run([
        "graph-weight",
        "--graph", alg(os.path.join("graphs", "wedge.json")),
        "--samples", "50000", "--seed", "7",
        "--json", str(report_path),
    ])
    out = capsys.readouterr().out
    assert code == 0 and "weight =" in out
    data = json.loads(report_path.read_text())
    assert data["command"][1] == "graph-weight"
    assert data["inputs_digest"]
    entry = next(r for r in data["results"] if r["label"] == "weight")
    assert abs(entry["value"] - 0.5) < 0.02
    assert entry["std_error"] > 0


def test_graph_weight_pattern_zero(capsys):
    code = run([
        "graph-weight",
        "--graph", alg(os.path.join("graphs", "pattern_zero.json")),
        "--samples", "20000", "--seed", "3",
    ])
    out = capsys.readouterr().out
    assert code == 0
    assert "pattern" in out


def test_e_series(capsys):
    code = run(["e-series", "--order", "4"])
    out = capsys.readouterr().out
    assert code == 0
    assert "1/2 * [X,Y]" in out and "1/240" in out


def test_json_report_exact_values(tmp_path):
    report_path = tmp_path / "r.json"
    run(["validate", alg("sl2.json"), "--json", str(report_path)])
    data = json.loads(report_path.read_text())
    labels = {r["label"]: r["value"] for r in data["results"]}
    assert labels == {"dim_k": "1", "dim_p": "2"}


def test_deterministic_reports(tmp_path):
    p1, p2 = tmp_path / "a.json", tmp_path / "b.json"
    run(["graph-weight", "--graph", alg(os.path.join("graphs", "bernoulli.json")),
         "--samples", "30000", "--seed", "11", "--json", str(p1)])
    run(["graph-weight", "--graph", alg(os.path.join("graphs", "bernoulli.json")),
         "--samples", "30000", "--seed", "11", "--json", str(p2)])
    d1, d2 = json.loads(p1.read_text()), json.loads(p2.read_text())
    assert d1["results"] == d2["results"]
    assert d1["inputs_digest"] == d2["inputs_digest"]


def test_star_dk_abelian(capsys):
    code = run(["star-dk", alg("abelian2.json"), "--p", "quad", "--q", "quad"])
    out = capsys.readouterr().out.strip()
    assert code == 0 and out == "quad^2"


def test_densities_q_kind(capsys):
    code = run(["densities", alg("sl2.json"), "--kind", "q_half", "--order", "2"])
    out = capsys.readouterr().out
    assert code == 0 and "1/6" in out  # (1/48) tr_g(ad X)^2 = (1/6)(H^2 + ...)
