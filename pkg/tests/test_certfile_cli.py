import json
from fractions import Fraction as F

import pytest

from vlb import certfile
from vlb.cli import build_report, main
from vlb.constructions import (
    aggregate,
    apply_metric,
    gen_grid2,
    gen_grid3_perturbed,
    gen_hypergrid,
    gen_quad4,
    gen_quint5,
    plan,
    plan_kflat,
)
from vlb.flats import Metric
from vlb.verify import verify_construction

FAMILIES = [
    lambda n: gen_grid2(n),
    lambda n: gen_grid3_perturbed(n),
    lambda n: gen_quad4(n),
    lambda n: gen_quint5(n),
    lambda n: gen_hypergrid(2, n),
    lambda n: aggregate(gen_grid2(n), gen_grid3_perturbed(n)),
    lambda n: plan(7, n)[1],
    lambda n: plan_kflat(2, 2, n),
    lambda n: apply_metric("quad4", n, Metric.lp(4)),
    lambda n: apply_metric("quint5", n, Metric.l1()),
]


@pytest.mark.parametrize("make", FAMILIES)
@pytest.mark.parametrize("n", [1, 2])
def test_roundtrip_identical_report(make, n):
    c = make(n)
    back = certfile.loads(certfile.dumps(c))
    assert back == c
    assert verify_construction(back) == verify_construction(c)


def test_roundtrip_n3():
    for make in FAMILIES[:5]:
        c = make(3)
        assert verify_construction(certfile.loads(certfile.dumps(c))) == verify_construction(c)


def test_dumps_deterministic():
    assert certfile.dumps(gen_quint5(2)) == certfile.dumps(gen_quint5(2))


def test_document_is_readable():
    doc = json.loads(certfile.dumps(gen_quad4(1, F(1, 9))))
    assert doc["format"] == "vlb/1" and doc["epsilon"] == "1/9" and doc["metric"] == "euclidean"
    assert doc["sites"][0] == {"label": "A_1", "free": [1], "fixed": [[0, "1/1"], [2, "1/9"], [3, "0/1"]]}
    # x1 = 1 + sqrt(2*eps - eps^2) = 1 + sqrt(17)/9
    assert doc["certificates"][0]["witness"][0] == [["1/1", 1], ["1/9", 17]]


@pytest.mark.parametrize("text", [
    "", "{", "[]", '{"format": "other"}',
    '{"format": "vlb/1", "dimension": 2, "metric": "euclidean", "sites": [], "certificates": [{"tuple": [], "mode": "zzz", "witness": []}]}',
    '{"format": "vlb/1", "dimension": 2, "metric": "linf", "sites": [], "certificates": []}',
    '{"format": "vlb/1", "dimension": 2, "metric": "euclidean", "sites": [{"label": "a", "free": [0], "fixed": [[1, "1/0"]]}], "certificates": []}',
])
def test_malformed(text):
    with pytest.raises(certfile.MalformedFile):
        certfile.loads(text)


# -- CLI ----------------------------------------------------------------------


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def test_generate_examples(tmp_path, capsys):
    f = tmp_path / "q.json"
    assert run(capsys, "generate", "quint5", "--n", 2, "--epsilon", "1/17", "--out", f)[0] == 0
    c = certfile.read(f)
    assert (len(c.sites), len(c.certificates)) == (8, 16)
    g = tmp_path / "g.json"
    run(capsys, "generate", "grid2", "--n", 3, "--out", g)
    c = certfile.read(g)
    assert (len(c.sites), len(c.certificates)) == (6, 9) and not c.claims_non_intersecting


def test_generate_rejects_bad_epsilon(capsys):
    code, _, err = run(capsys, "generate", "quad4", "--n", 2, "--epsilon", "1/2")
    assert code == 2 and "0 < eps < 1/(8n)" in err


@pytest.mark.parametrize("argv", [
    ["generate", "quad4", "--n", "0"],
    ["generate", "quad4", "--n", "2", "--metric", "linf"],
    ["generate", "plan", "--n", "2"],
    ["generate", "hypergrid", "--n", "2", "--metric", "l1"],
    ["generate", "nosuch", "--n", "2"],
    ["plan", "--dim", "1"],
    ["report", "--dims", "1-3"],
])
def test_invalid_params_exit_2(argv, capsys):
    assert main(argv) == 2


def test_verify_exit_codes(tmp_path, capsys):
    good = tmp_path / "good.json"
    certfile.write(gen_quint5(2, F(1, 17)), good)
    code, out, _ = run(capsys, "verify", good)
    assert code == 0 and "16/16 exact" in out

    doc = json.loads(good.read_text())
    doc["certificates"][2]["witness"][4] = [["12345/1000", 1]]
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(doc))
    code, out, _ = run(capsys, "verify", bad)
    assert code == 1 and "FAIL {" + ", ".join(doc["certificates"][2]["tuple"]) + "}" in out

    trunc = tmp_path / "trunc.json"
    trunc.write_text(good.read_text()[:500])
    assert run(capsys, "verify", trunc)[0] == 2
    assert run(capsys, "verify", tmp_path / "missing.json")[0] == 2


def test_verify_json_and_jobs(tmp_path, capsys):
    f = tmp_path / "q.json"
    certfile.write(gen_quad4(2), f)
    _, one, _ = run(capsys, "verify", f, "--json")
    _, two, _ = run(capsys, "verify", f, "--json", "--jobs", 2)
    assert one == two and json.loads(one)["ok"]


def test_verify_fails_unmet_bound(tmp_path, capsys):
    f = tmp_path / "short.json"
    c = gen_quad4(2)
    certfile.write(c.without_certificate(c.certificates[0].tuple), f)
    assert run(capsys, "verify", f)[0] == 1


def test_generate_to_stdout_is_deterministic(capsys):
    _, a, _ = run(capsys, "generate", "quad4", "--n", 2, "--metric", "lp:4")
    _, b, _ = run(capsys, "generate", "quad4", "--n", 2, "--metric", "lp:4")
    assert a == b and json.loads(a)["metric"] == "lp:4"


def test_plan_command(capsys):
    code, out, _ = run(capsys, "plan", "--dim", 9, "--n", 2)
    assert code == 0 and "exponent: 6" in out and "predicted certificates: 64" in out
    assert "exponent: 4" in run(capsys, "plan", "--dim", 5)[1]
    assert "exponent: 3" in run(capsys, "plan", "--dim", 4)[1]


def test_oracle_command(tmp_path, capsys):
    f = tmp_path / "q.json"
    certfile.write(gen_quad4(2), f)
    code, out, _ = run(capsys, "oracle", f, "--samples", 100000, "--seed", 42)
    assert code == 0 and "consistent" in out and "missing (0)" in out
    code, out, _ = run(capsys, "oracle", f, "--samples", 10)
    assert code == 0 and "extra (0)" in out
    c = gen_quad4(2)
    certfile.write(c.without_certificate(c.certificates[0].tuple), f)
    code, out, _ = run(capsys, "oracle", f)
    assert code == 1 and "extra (1): {A_1, B_1, C_1}" in out
    (tmp_path / "junk.json").write_text("nope")
    assert run(capsys, "oracle", tmp_path / "junk.json")[0] == 2


def test_report_command(capsys):
    code, out, _ = run(capsys, "report", "--dims", "2-7", "--n", 2, "--json")
    rows = json.loads(out)
    assert code == 0 and [r["required"] for r in rows] == [4, 4, 8, 16, 16, 32]
    assert all(r["status"] == "PASS" and r["certified"] >= r["required"] for r in rows)
    assert "time_s" not in rows[0]
    _, again, _ = run(capsys, "report", "--dims", "2-7", "--n", 2, "--json")
    assert again == out


def test_report_single_and_empty(capsys):
    assert build_report([5], [3]).rows[0].required == 81
    code, out, _ = run(capsys, "report", "--dims", "")
    assert code == 0 and out.strip().split() == ["d", "n", "certified", "required", "status"]
    code, out, _ = run(capsys, "report", "--dims", 3, "--timing")
    assert code == 0 and "time_s" in out


def test_report_eps_rule(capsys):
    code, out, _ = run(capsys, "report", "--dims", "4,5", "--n", "2,3", "--eps-rule", "16n", "--json")
    assert code == 0 and len(json.loads(out)) == 4
