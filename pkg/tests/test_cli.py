import json

import pytest

from lagrange_weyl import cli, fixtures
from lagrange_weyl.phase_space import standard_multiplier
from lagrange_weyl.groups import parse_group_spec


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_describe(capsys):
    code, out, _ = run(capsys, "describe", "--group", "3")
    assert code == 0 and "order 9" in out and "phase space: yes" in out
    code, out, _ = run(capsys, "describe", "--group", "2x2", "--json")
    data = json.loads(out)
    assert code == 0 and data["xi_order"] == 16 and data["phase_space"]


def test_describe_bad_group(capsys):
    code, _, err = run(capsys, "describe", "--group", "0")
    assert code == 2 and err


@pytest.mark.parametrize("spec,count", [("2", 3), ("3", 4), ("2x2", 15)])
def test_lagrangians(capsys, spec, count):
    code, out, _ = run(capsys, "lagrangians", "--group", spec, "--json")
    rows = json.loads(out)
    assert code == 0 and len(rows) == count
    if spec in ("2", "3"):
        assert sorted(r["label"] for r in rows) == sorted(fixtures.FIXTURES[spec]["lagrangians"])


def test_algebra_z2_h1(capsys):
    code, out, _ = run(capsys, "algebra", "--group", "2", "--subgroup", "H1")
    assert code == 0
    assert "form: [[a,b],[b,a]]" in out
    assert "-> a+b" in out and "-> a-b" in out


def test_algebra_selectors_agree(capsys):
    results = []
    for sel in ("H3", "(1,1)"):
        code, out, _ = run(capsys, "algebra", "--group", "2", "--subgroup", sel, "--json")
        assert code == 0
        results.append(json.loads(out)["form"])
    assert results == ["[[a,b],[-b,a]]"] * 2
    code, out, _ = run(capsys, "algebra", "--group", "2", "--subgroup", "0", "--json")
    assert code == 0 and json.loads(out)["lagrangian"]


def test_algebra_non_lagrangian(capsys):
    code, out, _ = run(capsys, "algebra", "--group", "2", "--subgroup", "(0,0)", "--json")
    data = json.loads(out)
    assert code == 0 and not data["lagrangian"] and data["dimension"] == 4 and data["spectrum"] is None


def test_algebra_z3_h3_reports_printed_repair(capsys):
    code, out, _ = run(capsys, "algebra", "--group", "3", "--subgroup", "H3")
    assert code == 0
    assert "same span False" in out
    assert "entry (1,2): replacing c by b" in out


@pytest.mark.parametrize("sel", ["H9", "(5,0)", "99", "(1,x)"])
def test_algebra_bad_selector(capsys, sel):
    code, _, err = run(capsys, "algebra", "--group", "2", "--subgroup", sel)
    assert code == 2 and err


def test_dump_phi(capsys):
    code, out, _ = run(capsys, "algebra", "--group", "2", "--subgroup", "H2", "--dump-phi", "--json")
    data = json.loads(out)
    assert code == 0 and len(data["phi"]) == 4
    by_elem = {tuple(p["element"]): p["value"] for p in data["phi"]}
    assert by_elem[(1, 1)][0] * 2 == by_elem[(1, 1)][1]  # Phi((1,1)) = -1
    code, _, _ = run(capsys, "algebra", "--group", "2", "--subgroup", "(0,0)", "--dump-phi")
    assert code == 2


def test_multiplier_file(capsys, tmp_path):
    path = tmp_path / "m.json"
    path.write_text(json.dumps(standard_multiplier(parse_group_spec("3")).to_triples()))
    code, out, _ = run(capsys, "lagrangians", "--group", "3", "--multiplier", f"file:{path}", "--json")
    assert code == 0 and len(json.loads(out)) == 4
    code, out, _ = run(capsys, "algebra", "--group", "3", "--multiplier", f"file:{path}", "--subgroup", "0")
    assert code == 0 and "commutative yes" in out


def test_invalid_multiplier_file(capsys, tmp_path):
    path = tmp_path / "m.json"
    path.write_text("[]")
    code, _, err = run(capsys, "lagrangians", "--group", "2", "--multiplier", f"file:{path}")
    assert code == 2 and err
    code, _, _ = run(capsys, "describe", "--group", "2", "--multiplier", "nonsense")
    assert code == 2


def test_verify_single_group(capsys, tmp_path):
    out_file = tmp_path / "r.json"
    code, out, err = run(capsys, "verify", "--group", "3", "--tensor-k", "2", "--json", "--output", str(out_file))
    assert code == 0
    data = json.loads(out)
    assert data["summary"]["failed"] == 0
    assert json.loads(out_file.read_text()) == data
    assert "Z3" in err


def test_verify_corrupted_fixture_exits_3(capsys):
    fixtures.FIXTURES["2"]["lagrangians"]["H1"] = [(0, 0), (0, 1)]
    code, _, _ = run(capsys, "verify", "--group", "2", "--tensor-k", "2")
    assert code == 3


def test_verify_rejects_file_multiplier(capsys, tmp_path):
    code, _, _ = run(capsys, "verify", "--group", "2", "--multiplier", f"file:{tmp_path}/x.json")
    assert code == 2
    code, _, _ = run(capsys, "verify", "--group", "2", "--tensor-k", "0")
    assert code == 2


def test_unknown_command_is_input_error(capsys):
    assert cli.main(["frobnicate"]) == 2
    capsys.readouterr()
