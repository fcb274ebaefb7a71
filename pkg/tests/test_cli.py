import json
import math
import os
from fractions import Fraction
from importlib import resources

import jsonschema
import pytest

from locsparse import gen
from locsparse.cli import main
from locsparse.graph import Graph


def _schema(name: str) -> dict:
    ref = resources.files("locsparse") / "schemas" / f"{name}.schema.json"
    return json.loads(ref.read_text())


def _validate(obj, schema_name: str) -> None:
    jsonschema.validate(obj, _schema(schema_name))


@pytest.fixture()
def graph_file(tmp_path):
    def write(g: Graph, name: str = "g.edges") -> str:
        path = tmp_path / name
        path.write_text(g.to_edge_list())
        return str(path)
    return write


def run_cli(capsys, *argv) -> tuple[int, str]:
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_analyze_fail_verdict_exit3(graph_file, capsys):
    path = graph_file(gen.complete(4))
    code, out = run_cli(capsys, "analyze", path, "--k", "0", "--r", "3")
    obj = json.loads(out)
    _validate(obj, "sparsity_certificate")
    assert code == 3
    assert obj["verdict"] is False
    assert len(obj["violations"]) == 4


def test_analyze_pass_exit0(graph_file, capsys):
    path = graph_file(gen.cycle(7))
    code, out = run_cli(capsys, "analyze", path, "--k", "0", "--r", "3")
    assert code == 0
    assert json.loads(out)["verdict"] is True


def test_polynomial_output(graph_file, capsys):
    path = graph_file(gen.path(3))
    code, out = run_cli(capsys, "polynomial", path)
    obj = json.loads(out)
    _validate(obj, "independence_polynomial")
    assert code == 0
    assert obj["coeffs"] == [1, 3, 1]


def test_occupancy_c5(graph_file, capsys):
    path = graph_file(gen.cycle(5))
    code, out = run_cli(capsys, "occupancy", path, "--lambda", "1.0")
    obj = json.loads(out)
    _validate(obj, "occupancy_output")
    assert code == 0
    assert obj["occupancy_fraction"] == pytest.approx(3 / 11)
    assert Fraction(obj["occupancy_fraction_exact"]) == Fraction(3, 11)


def test_occupancy_with_glauber_needs_seed(graph_file, capsys):
    path = graph_file(gen.cycle(5))
    code, _ = run_cli(capsys, "occupancy", path, "--glauber-steps", "1000")
    assert code == 2
    code, out = run_cli(capsys, "occupancy", path, "--glauber-steps", "1000",
                        "--seed", "3")
    obj = json.loads(out)
    _validate(obj, "occupancy_output")
    assert code == 0 and "glauber" in obj


def test_certify_manual_pass(graph_file, capsys):
    path = graph_file(gen.complete(2))
    code, out = run_cli(capsys, "certify", path, "--lambda", "1.0",
                        "--beta", "2.0", "--gamma", "1.0")
    obj = json.loads(out)
    _validate(obj, "certify_output")
    _validate(obj["certificate"], "occupancy_certificate")
    _validate(obj["verdict"], "check_verdict")
    assert code == 0
    assert obj["certified_bound"] == pytest.approx(1 / 3)
    assert obj["exact_occupancy"] == pytest.approx(1 / 3)
    assert obj["bound_holds"] is True


def test_certify_fail_exit3(graph_file, capsys):
    path = graph_file(gen.complete(2))
    code, out = run_cli(capsys, "certify", path, "--lambda", "1.0",
                        "--beta", "2.0", "--gamma", "0.9")
    assert code == 3
    assert json.loads(out)["verdict"]["pass"] is False


def test_certify_auto(graph_file, capsys):
    path = graph_file(gen.cycle(5))
    code, out = run_cli(capsys, "certify", path, "--auto", "--lambda", "1.0")
    obj = json.loads(out)
    _validate(obj, "certify_output")
    assert code in (0, 3)  # verdict is reported either way


def test_iset_witness(graph_file, capsys):
    g = Graph(16, [(0, 1)])
    path = graph_file(g)
    code, out = run_cli(capsys, "iset", path, "--k", "1", "--r", "2")
    obj = json.loads(out)
    _validate(obj, "iset_witness")
    assert code == 0
    assert obj["size"] >= 8


def test_iset_precondition_exit2(graph_file, capsys):
    path = graph_file(gen.path(10))
    code, _ = run_cli(capsys, "iset", path, "--k", "1", "--r", "2")
    assert code == 2


def test_cover_and_color_roundtrip(graph_file, capsys, tmp_path):
    path = graph_file(gen.cycle(4))
    code, out = run_cli(capsys, "cover", path, "--fold", "3", "--seed", "5")
    obj = json.loads(out)
    _validate(obj, "cover")
    cover_path = tmp_path / "cover.json"
    cover_path.write_text(json.dumps(obj))
    code, out = run_cli(capsys, "color", path, "--cover", str(cover_path))
    obj = json.loads(out)
    _validate(obj, "coloring_output")
    assert code == 0
    assert obj["status"] == "colored"


def test_color_unsat_exit3(graph_file, capsys, tmp_path):
    from locsparse.coloring import cover_from_lists
    g = gen.cycle(5)
    path = graph_file(g)
    cover = cover_from_lists(g, {v: [0, 1] for v in range(5)})
    cover_path = tmp_path / "cover.json"
    cover_path.write_text(cover.to_json())
    code, out = run_cli(capsys, "color", path, "--cover", str(cover_path))
    assert code == 3
    assert json.loads(out)["status"] == "unsat"


def test_color_heuristic(graph_file, capsys, tmp_path):
    from locsparse.coloring import cover_from_lists
    g = gen.petersen()
    path = graph_file(g)
    cover = cover_from_lists(g, {v: [0, 1, 2, 3] for v in range(10)})
    cover_path = tmp_path / "cover.json"
    cover_path.write_text(cover.to_json())
    code, out = run_cli(capsys, "color", path, "--cover", str(cover_path),
                        "--heuristic", "--seed", "1")
    obj = json.loads(out)
    _validate(obj, "coloring_output")
    assert code == 0 and obj["status"] == "colored"


def test_conditions_dkps(graph_file, capsys, tmp_path):
    from locsparse.coloring import cover_from_lists
    g = gen.edgeless(4)
    path = graph_file(g)
    cover = cover_from_lists(g, {v: list(range(8)) for v in range(4)})
    cover_path = tmp_path / "cover.json"
    cover_path.write_text(cover.to_json())
    code, out = run_cli(capsys, "conditions", path, "--cover", str(cover_path),
                        "--mode", "dkps",
                        "--params", '{"lambda": 1.0, "beta": 2.0, "gamma": 1.0, "ell": 4.0}')
    obj = json.loads(out)
    _validate(obj, "condition_report")
    assert code == 0
    assert obj["hypotheses_verified"] is True


def test_conditions_bknp_fail_exit3(graph_file, capsys, tmp_path):
    from locsparse.coloring import cover_from_lists
    g = gen.petersen()
    path = graph_file(g)
    cover = cover_from_lists(g, {v: list(range(4)) for v in range(10)})
    cover_path = tmp_path / "cover.json"
    cover_path.write_text(cover.to_json())
    code, out = run_cli(capsys, "conditions", path, "--cover", str(cover_path),
                        "--mode", "bknp", "--params", '{"epsilon": 0.25}')
    obj = json.loads(out)
    _validate(obj, "condition_report")
    assert code == 3
    assert obj["hypotheses_verified"] is False


def test_embed_files(graph_file, capsys, tmp_path):
    path = graph_file(gen.path(3))
    prefix = str(tmp_path / "boosted")
    code, out = run_cli(capsys, "embed", path, "--delta", "2", "-o", prefix)
    assert code == 0
    written = json.loads(out)
    assert written["n_prime"] == 6 and written["j"] == 1
    g_prime = Graph.from_edge_list(open(prefix + ".edges").read())
    assert g_prime.degrees() == [2] * 6
    homs = json.loads(open(prefix + ".json").read())
    assert len(homs["homs"]) == 2


def test_embed_json_output(graph_file, capsys):
    path = graph_file(gen.path(3))
    code, out = run_cli(capsys, "embed", path, "--delta", "2")
    obj = json.loads(out)
    _validate(obj, "embedding_result")
    assert code == 0


def test_gen_deterministic_bytes(capsys, tmp_path):
    a = tmp_path / "a.edges"
    b = tmp_path / "b.edges"
    code, _ = run_cli(capsys, "gen", "gnp", "--params", '{"n": 12, "p": 0.4}',
                      "--seed", "7", "-o", str(a))
    assert code == 0
    code, _ = run_cli(capsys, "gen", "gnp", "--params", '{"n": 12, "p": 0.4}',
                      "--seed", "7", "-o", str(b))
    assert code == 0
    assert a.read_bytes() == b.read_bytes()


def test_gen_requires_seed_for_random(capsys):
    code, _ = run_cli(capsys, "gen", "gnp", "--params", '{"n": 5, "p": 0.5}')
    assert code == 2


def test_gen_fixed_family(capsys):
    code, out = run_cli(capsys, "gen", "petersen")
    assert code == 0
    assert Graph.from_edge_list(out) == gen.petersen()


def test_dimacs_format_flag(capsys, tmp_path):
    path = tmp_path / "g.col"
    path.write_text("p edge 4 3\ne 1 2\ne 2 3\ne 3 4\n")
    code, out = run_cli(capsys, "occupancy", str(path), "--format", "dimacs")
    assert code == 0
    obj = json.loads(out)
    assert obj["n"] == 4


def test_bench_quick_with_report(capsys, tmp_path):
    report_dir = tmp_path / "report"
    code, out = run_cli(capsys, "bench", "--suite", "acceptance", "--quick",
                        "--report-dir", str(report_dir))
    assert code == 0
    lines = [l for l in out.splitlines() if l.startswith("[")]
    assert len(lines) == 11
    assert all(l.startswith("[PASS]") for l in lines)
    files = os.listdir(report_dir)
    assert "results.csv" in files
    pngs = [f for f in files if f.endswith(".png")]
    assert len(pngs) >= 3
    header = (report_dir / "results.csv").read_text().splitlines()[0]
    assert header == "criterion,name,status,seconds,detail"


@pytest.mark.filterwarnings("ignore::UserWarning")
def test_refbound_flagged_outputs(capsys):
    code, out = run_cli(capsys, "refbound", "--kind", "iset_max_deg",
                        "--degree", "1e6", "--eps", "0", "--r", "3", "--n", "1000000")
    obj = json.loads(out)
    assert code == 0
    assert obj["asymptotic_reference"] is True
    assert obj["value"] == pytest.approx(1.7538, rel=1e-3)
    code, out = run_cli(capsys, "refbound", "--kind", "ratio",
                        "--log-z", "10", "--k", "1", "--r", "4")
    obj = json.loads(out)
    assert obj["value"] == pytest.approx(0.5 * 10 / math.log(math.e**2 * 10))
    code, _ = run_cli(capsys, "refbound", "--kind", "chi_c", "--eps", "0.5", "--r", "3")
    assert code == 2  # missing --degree


def test_unknown_suite_exit2(capsys):
    code, _ = run_cli(capsys, "bench", "--suite", "nope")
    assert code == 2


def test_missing_file_exit2(capsys):
    code, _ = run_cli(capsys, "occupancy", "/nonexistent/file.edges")
    assert code == 2
