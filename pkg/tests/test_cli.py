import json
from importlib.resources import files

import jsonschema
import pytest

from cibundles.cli import EXIT_FAIL, EXIT_OK, EXIT_USAGE, main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def schema(name):
    return json.loads(files("cibundles").joinpath("schemas", f"{name}.schema.json").read_text())


def run_json(capsys, schema_name, *argv):
    code, out, _ = run(capsys, *argv, "--format", "json")
    doc = json.loads(out)
    jsonschema.validate(doc, schema(schema_name))
    return code, doc


def test_cohomology(capsys):
    code, doc = run_json(capsys, "cohomology", "cohomology", "--n", "4", "--degrees", "4,6", "--twist", "1")
    assert code == EXIT_OK and doc["h"] == [5, 0, 69]
    code, doc = run_json(capsys, "cohomology", "cohomology", "--n", "2", "--degrees", "2", "--twist", "-1")
    assert doc["h"] == [0, 1]


def test_cb(capsys):
    code, doc = run_json(capsys, "cb", "cb", "--grid", "3,3", "--m", "3")
    assert code == EXIT_OK and doc["holds"] and doc["points"] == 9
    code, doc = run_json(capsys, "cb", "cb", "--z-config", "4,6", "--ambient", "4", "--m", "6")
    assert doc["holds"] and doc["points"] == 18
    code, doc = run_json(capsys, "cb", "cb", "--random", "9", "--m", "3")
    assert not doc["holds"] and doc["witness"] is not None


def test_cb_points_file(capsys, tmp_path):
    path = tmp_path / "pts.json"
    path.write_text(json.dumps([[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1]]))
    code, doc = run_json(capsys, "cb", "cb", "--points", str(path), "--m", "1")
    assert code == EXIT_OK and doc["points"] == 4 and doc["holds"]
    code, doc = run_json(capsys, "cb", "cb", "--points", str(path), "--m", "2")
    assert not doc["holds"]


def test_fano_commands(capsys):
    code, doc = run_json(capsys, "fano_report", "fano", "lines-fermat", "--d", "6")
    assert code == EXIT_OK and len(doc["items"]) == 108 == doc["component_count"]
    assert all(it["splitting"] == [-1, -2] for it in doc["items"])
    code, doc = run_json(capsys, "fano_report", "fano", "planes-fermat", "--d", "3")
    assert len(doc["items"]) == 405 == doc["component_count"]
    code, doc = run_json(capsys, "bott", "fano", "bott", "--n", "4", "--deg", "5")
    assert doc["count"] == 2875
    code, doc = run_json(capsys, "fano_report", "fano", "example46", "--d", "6")
    assert doc["component_count"] == 6 and doc["ranks"] == {"m1": 7, "m2": 7}


def test_fano_splitting_files(capsys, tmp_path):
    surf = tmp_path / "f.txt"
    surf.write_text("z0*z3 + z1*z4 + z2^2")
    line = tmp_path / "line.json"
    line.write_text(json.dumps({"points": [[1, 0, 0, 0, 0], [0, 1, 0, 0, 0]]}))
    code, doc = run_json(capsys, "splitting", "fano", "splitting", "--hypersurface", str(surf), "--line", str(line))
    assert code == EXIT_OK and doc["splitting"] == [1, 0] and doc["h0"] == 3
    surf.write_text("z0*z3^2 + z1*z4^2 + z2*z3*z4")
    code, _, _ = run(capsys, "fano", "splitting", "--hypersurface", str(surf), "--line", str(line))
    assert code == EXIT_FAIL


def test_bundle_and_components(capsys):
    code, doc = run_json(capsys, "bundle", "bundle", "--n", "4", "--degrees", "4,6")
    assert code == EXIT_OK and doc["h"] == [3, 0, 175] and doc["chern"]["c2"] == 18
    code, doc = run_json(capsys, "components", "components", "--example", "spinor")
    assert doc["components"] == [{"count": 2, "dim": 0}]
    code, out, _ = run(capsys, "bundle", "--n", "4", "--degrees", "4,6")
    assert "c2 = 18" in out and "h = [3, 0, 175]" in out


def test_examples_run_all(capsys):
    code, doc = run_json(capsys, "examples", "examples", "run-all")
    assert code == EXIT_OK and doc["passed"]
    assert all(r["status"] == "PASS" for r in doc["rows"])
    code, out, _ = run(capsys, "examples", "run-all", "--only", "quintic")
    assert code == EXIT_OK and out.strip().endswith("ALL PASS")


def test_same_seed_is_byte_identical(capsys):
    argv = ["fano", "example46", "--d", "6", "--seed", "5", "--format", "json"]
    _, first, _ = run(capsys, *argv)
    _, second, _ = run(capsys, *argv)
    assert first == second


def test_verdicts_do_not_depend_on_seed(capsys):
    verdicts = []
    for seed in ("1", "2"):
        _, doc = run_json(capsys, "examples", "examples", "run-all", "--seed", seed)
        verdicts.append([(r["name"], r["status"]) for r in doc["rows"]])
    assert verdicts[0] == verdicts[1]


def test_seed_from_environment(capsys, monkeypatch):
    monkeypatch.setenv("CIBUNDLES_SEED", "3")
    _, a, _ = run(capsys, "cb", "--random", "5", "--m", "2", "--format", "json")
    _, b, _ = run(capsys, "cb", "--random", "5", "--m", "2", "--format", "json", "--seed", "3")
    assert a == b


@pytest.mark.parametrize("argv", [
    ["bundle", "--n", "4", "--degrees", "3,6"],
    ["fano", "bott", "--n", "4", "--deg", "4"],
    ["fano", "lines-fermat", "--d", "6", "--prime", "11"],
    ["cohomology", "--n", "2", "--degrees", "1,1,1", "--twist", "0"],
    ["cb", "--m", "2"],
])
def test_usage_errors(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == EXIT_USAGE and "error" in err


def test_argparse_errors_exit_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["bundle", "--n", "four", "--degrees", "4,6"])
    assert exc.value.code == EXIT_USAGE
