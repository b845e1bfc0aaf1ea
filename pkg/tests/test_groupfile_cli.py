import json

import pytest

import smgrow
from smgrow.cli import main
from smgrow.groupfile import dump_definition, dumps_definition, load_group, parse_definition
from smgrow.growth import MetricSpec, ball_enumerate
from smgrow.torsion import build_graph, torsion_verdict

ROUNDTRIP_IDS = [
    "catalog:grigorchuk",
    "catalog:grigorchuk-overgroup",
    "catalog:grigorchuk-omega:XY.Z*",
    "catalog:gupta-sidki:3",
    "catalog:fabrykowski-gupta",
    "catalog:square",
    "catalog:epsilon:2:1",
    "catalog:klein-family:1ij",
]


@pytest.mark.parametrize("identifier", ROUNDTRIP_IDS)
def test_definition_roundtrip(identifier):
    data = load_group(identifier)
    doc = json.loads(json.dumps(dump_definition(data)))
    back = parse_definition(doc)
    assert smgrow.validate(back) == []
    t1 = ball_enumerate(data, MetricSpec("standard"), 4)
    t2 = ball_enumerate(back, MetricSpec("standard"), 4)
    assert [r[1:] for r in t1.rows] == [r[1:] for r in t2.rows]
    if data.regular and data.A_abelian:
        v1 = torsion_verdict(build_graph(data))
        v2 = torsion_verdict(build_graph(back))
        assert v1.torsion == v2.torsion
        assert {(v, e) for v, e in v1.graph.e.items()} == {
            (v, e) for v, e in v2.graph.e.items()
        }


def test_load_group_from_file(tmp_path):
    data = load_group("catalog:gupta-sidki:3")
    path = tmp_path / "gs3.json"
    path.write_text(dumps_definition(data), encoding="utf-8")
    loaded = load_group(str(path))
    assert smgrow.validate(loaded) == []
    assert loaded.d == 3
    # power labels survive the round trip through the definition file
    from smgrow.words import parse_element

    assert parse_element(loaded, "x2") == parse_element(loaded, "x x")
    assert parse_element(loaded, "b x2") == parse_element(data, "b x2")


def test_load_group_missing_file():
    with pytest.raises(smgrow.DataError):
        load_group("/nonexistent/nowhere.json")


def test_parse_definition_catalog_passthrough():
    data = parse_definition({"catalog": "gupta-sidki", "params": {"p": 3}})
    assert data.name == "gupta-sidki(3)"


def test_hom_labels_must_generate():
    doc = {
        "d": 2,
        "A": {"named": "cyclic"},
        "B": {"named": "klein"},
        "phi": [{"period": [{"b": "x"}]}],  # b alone does not generate Klein
    }
    with pytest.raises(smgrow.DataError):
        parse_definition(doc)


def test_omega_rejects_garbage():
    with pytest.raises(smgrow.DataError):
        load_group("catalog:grigorchuk-omega:XQ*")
    with pytest.raises(smgrow.DataError):
        load_group("catalog:grigorchuk-omega:XY.*")


# ---------------------------------------------------------------------------
# CLI surface


def test_cli_torsion(capsys):
    assert main(["torsion", "--group", "catalog:gupta-sidki:3"]) == 0
    out = capsys.readouterr().out
    assert out.startswith("Torsion")


def test_cli_torsion_witness(capsys):
    assert main(["torsion", "--group", "catalog:fabrykowski-gupta", "--witness", "3"]) == 0
    out = capsys.readouterr().out
    assert out.startswith("NotTorsion")
    assert "verified" in out


def test_cli_torsion_rejects_grigorchuk(capsys):
    assert main(["torsion", "--group", "catalog:grigorchuk"]) == 1
    assert "level-independent" in capsys.readouterr().err


def test_cli_act(capsys):
    assert main(["act", "--group", "catalog:grigorchuk", "--element", "b", "--vertex", "11"]) == 0
    assert capsys.readouterr().out.strip() == "12"


def test_cli_mul_order(capsys):
    assert main(["mul", "--group", "catalog:grigorchuk", "--left", "b", "--right", "c"]) == 0
    assert capsys.readouterr().out.strip() == "d"
    assert main(["order", "--group", "catalog:grigorchuk", "--element", "a d", "--cap", "50"]) == 0
    assert capsys.readouterr().out.strip() == "4"


def test_cli_canon(capsys):
    assert main(["canon", "--d", "3", "--epsilon", "1,0"]) == 0
    assert capsys.readouterr().out.strip() == "0,1 subdirect"


def test_cli_validate_and_hypotheses(capsys, tmp_path):
    assert main(["validate", "--group", "catalog:square"]) == 0
    capsys.readouterr()
    assert main(["hypotheses", "--group", "catalog:square"]) == 0
    assert capsys.readouterr().out.strip() == "pass"
    # failing hypotheses exit 0 without --strict, 1 with it
    assert main(["hypotheses", "--group", "catalog:epsilon:2:1"]) == 0
    capsys.readouterr()
    assert main(["hypotheses", "--group", "catalog:epsilon:2:1", "--strict"]) == 1


def test_cli_catalog_listing_and_export(capsys, tmp_path):
    assert main(["catalog"]) == 0
    out = capsys.readouterr().out
    assert "grigorchuk" in out and "epsilon" in out
    target = tmp_path / "def.json"
    assert main(["catalog", "--id", "catalog:square", "--out", str(target)]) == 0
    doc = json.loads(target.read_text(encoding="utf-8"))
    assert doc["d"] == 4


def test_cli_growth(capsys, tmp_path):
    target = tmp_path / "growth.csv"
    assert main(
        ["growth", "--group", "catalog:epsilon:2:1", "--radius", "6", "--out", str(target)]
    ) == 0
    lines = target.read_text(encoding="utf-8").strip().split("\n")
    assert lines[0].startswith("# smgrow growth")
    assert lines[1] == "n,sphere,ball,exhausted"
    assert lines[2] == "0,1,1,0"
    assert lines[-1].split(",")[2] == "13"


def test_cli_montecarlo_reproducible(tmp_path):
    args = [
        "montecarlo",
        "--group", "catalog:epsilon:2:1",
        "--length", "200",
        "--samples", "2000",
        "--seed", "7",
    ]
    out1 = tmp_path / "a.csv"
    out2 = tmp_path / "b.csv"
    assert main(args + ["--threads", "1", "--out", str(out1)]) == 0
    assert main(args + ["--threads", "8", "--out", str(out2)]) == 0
    assert out1.read_bytes() == out2.read_bytes()


def test_cli_montecarlo_requires_seed(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["montecarlo", "--group", "catalog:square", "--length", "10", "--samples", "10"])
    assert exc.value.code == 2


def test_cli_usage_error_exit_code():
    with pytest.raises(SystemExit) as exc:
        main(["no-such-command"])
    assert exc.value.code == 2


def test_cli_series_roundtrip(tmp_path, capsys):
    a = tmp_path / "a.csv"
    a.write_text("n,coeff\n" + "\n".join(f"{n},{2**n}" for n in range(12)) + "\n")
    b = tmp_path / "b.csv"
    b.write_text("n,coeff\n" + "\n".join(f"{n},{3**n}" for n in range(12)) + "\n")
    out = tmp_path / "c.csv"
    assert main(["series", "convolve", "--a", str(a), "--b", str(b), "--out", str(out)]) == 0
    rows = [line for line in out.read_text().splitlines() if not line.startswith(("#", "n,"))]
    assert [int(r.split(",")[1]) for r in rows] == [5**n for n in range(12)]
    assert main(["series", "radius", "--series", str(a)]) == 0
    assert "ratio_estimate,0.5" in capsys.readouterr().out
    assert main(["series", "rho", "--start", "3", "--size-a", "2", "--steps", "5"]) == 0


def test_cli_series_diagnostic(tmp_path):
    gamma = tmp_path / "gamma.csv"
    gamma.write_text("n,coeff\n" + "\n".join(f"{n},{n + 1}" for n in range(12)) + "\n")
    out = tmp_path / "diag.csv"
    assert main(
        ["series", "diagnostic", "--gamma", str(gamma), "--size-a", "2", "--d", "2",
         "--upto", "8", "--out", str(out)]
    ) == 0
    lines = out.read_text().strip().split("\n")
    assert lines[1] == "n,lhs,rhs,slack"
    assert len(lines) == 11


def test_cli_montecarlo_header_records_config(tmp_path):
    out = tmp_path / "mc.csv"
    assert main(
        ["montecarlo", "--group", "catalog:epsilon:2:1", "--length", "50",
         "--samples", "100", "--seed", "3", "--out", str(out)]
    ) == 0
    first = out.read_text().split("\n")[0]
    assert first.startswith("# smgrow montecarlo")
    config = json.loads(first.split("montecarlo ", 1)[1])
    assert config["seed"] == 3 and config["length"] == 50
