import json

import numpy as np
import pytest

from resgeo.cli import main
from resgeo.embed import read_coordinates
from resgeo.generators import random_class_q

SHOWCASE_EDGES = """\
# four-node showcase digraph
n 4
1 2 1
1 3 2
2 4 1
3 4 2
4 1 3
"""

PATH_ADJACENCY = """\
0,1,0
1,0,1
0,1,0
"""


@pytest.fixture
def edge_file(tmp_path):
    path = tmp_path / "graph.edges"
    path.write_text(SHOWCASE_EDGES)
    return str(path)


@pytest.fixture
def signed_file(tmp_path):
    q = random_class_q(4, np.random.default_rng(5), ensure_signed=True)
    path = tmp_path / "q.csv"
    path.write_text("\n".join(
        ",".join(format(v, ".17g") for v in row) for row in q.matrix
    ) + "\n")
    return str(path)


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, json.loads(out)


def test_check_reports_structure(capsys, edge_file):
    code, report = run_cli(capsys, "check", edge_file)
    assert code == 0
    assert report["status"] == "ok"
    assert report["outputs"]["strongly_connected"] is True
    assert report["outputs"]["weight_balanced"] is True
    assert report["residuals"]["shifted_pinv"] < 1e-10


def test_check_on_unbalanced_and_disconnected_graphs(capsys, tmp_path):
    unbal = tmp_path / "unbal.csv"
    unbal.write_text("2,-2\n-1,1\n")
    code, report = run_cli(capsys, "check", str(unbal), "--as-laplacian")
    assert code == 0
    assert report["outputs"]["strongly_connected"] is True
    assert report["outputs"]["weight_balanced"] is False

    disc = tmp_path / "disc.csv"
    disc.write_text("0,0\n0,0\n")
    code, report = run_cli(capsys, "check", str(disc))
    assert code == 0
    assert report["outputs"]["strongly_connected"] is False


def test_kron_keeps_one_based_ids(capsys, edge_file):
    code, report = run_cli(capsys, "kron", edge_file, "--keep", "1,2,4")
    assert code == 0
    assert report["outputs"]["kept"] == [1, 2, 4]
    expected = [[3.0, -1.0, -2.0], [0.0, 1.0, -1.0], [-3.0, 0.0, 3.0]]
    assert np.abs(np.array(report["outputs"]["reduced"]) - expected).max() < 1e-9
    assert report["residuals"]["resistance_invariance"] < 1e-9


def test_resistance_on_adjacency_matrix(capsys, tmp_path):
    path = tmp_path / "path.csv"
    path.write_text(PATH_ADJACENCY)
    code, report = run_cli(capsys, "resistance", str(path))
    assert code == 0
    omega = np.array(report["outputs"]["omega"])
    expected = [[0.0, 1.0, 2.0], [1.0, 0.0, 1.0], [2.0, 1.0, 0.0]]
    assert np.abs(omega - expected).max() < 1e-9
    assert report["outputs"]["inertia"] == [1, 2, 0]
    assert report["outputs"]["metric_class"] == "resistance_metric"


def test_curvature_command(capsys, edge_file):
    code, report = run_cli(capsys, "curvature", edge_file)
    assert code == 0
    p = np.array(report["outputs"]["p"])
    assert np.abs(p - [0.0, 0.5, 0.5, 0.0]).max() < 1e-9
    assert abs(report["outputs"]["sigma2"] - 0.375) < 1e-12
    assert report["residuals"]["fiedler_bapat"] < 1e-8


def test_maxvar_command(capsys, edge_file):
    code, report = run_cli(capsys, "maxvar", edge_file)
    assert code == 0
    assert report["outputs"]["support"] == [2, 3]
    assert abs(report["outputs"]["value"] - 0.375) < 1e-9
    assert report["residuals"]["support_curvature"] < 1e-8
    assert report["residuals"]["radius_value"] < 1e-8


def test_embed_command_writes_coordinates(capsys, edge_file, tmp_path):
    out = tmp_path / "coords.csv"
    code, report = run_cli(capsys, "embed", edge_file, "--out", str(out))
    assert code == 0
    assert report["residuals"]["dihedral"] < 1e-9
    data = read_coordinates(out)
    assert np.abs(np.array(report["outputs"]["coordinates"])
                  - data["coordinates"]).max() == 0.0
    assert abs(report["outputs"]["circumradius"]
               - np.sqrt(0.375)) < 1e-12


def test_balance_command(capsys, tmp_path):
    path = tmp_path / "two.edges"
    path.write_text("1 2 2\n2 1 1\n")
    code, report = run_cli(capsys, "balance", str(path))
    assert code == 0
    m = np.array(report["outputs"]["m"])
    assert np.abs(m - [2.0 / 3.0, 4.0 / 3.0]).max() < 1e-9
    assert report["residuals"]["transform_vs_direct"] < 1e-9
    assert abs(report["outputs"]["sigma2"] - 1.0 / 6.0) < 1e-12
    assert abs(report["outputs"]["sigma2_balanced"] - 3.0 / 16.0) < 1e-12


def test_signed_laplacian_input(capsys, signed_file):
    code, report = run_cli(capsys, "check", signed_file, "--as-laplacian")
    assert code == 0
    assert report["outputs"]["input_kind"] == "class_q"
    assert report["outputs"]["class_q"]["ok"] is True

    code, report = run_cli(capsys, "resistance", signed_file, "--as-laplacian")
    assert code == 0
    assert report["outputs"]["metric_class"] == "strict_negative_type"

    code, report = run_cli(capsys, "maxvar", signed_file, "--as-laplacian")
    assert code == 0
    assert report["residuals"]["kkt"] < 1e-9


def test_verify_command(capsys):
    code, report = run_cli(capsys, "verify", "--cases", "2", "--n-max", "6")
    assert code == 0
    props = report["outputs"]["properties"]
    assert len(props) >= 20
    assert all(p["passed"] for p in props)


def test_verify_zero_cases(capsys):
    code, report = run_cli(capsys, "verify", "--cases", "0")
    assert code == 0
    assert report["status"] == "ok"


def test_missing_file_is_validation_error(capsys):
    code, report = run_cli(capsys, "check", "/no/such/file")
    assert code == 1
    assert report["status"] == "fail"
    assert "cannot read" in report["error"]["message"]


def test_malformed_edge_line_names_the_line(capsys, tmp_path):
    path = tmp_path / "bad.edges"
    path.write_text("1 2 1\n1 2\n")
    code, report = run_cli(capsys, "resistance", str(path))
    assert code == 1
    assert ":2:" in report["error"]["message"]


def test_zero_based_ids_rejected(capsys, tmp_path):
    path = tmp_path / "bad.edges"
    path.write_text("0 1 1\n")
    code, report = run_cli(capsys, "check", str(path))
    assert code == 1
    assert "1-based" in report["error"]["message"]


def test_negative_adjacency_rejected(capsys, tmp_path):
    path = tmp_path / "bad.csv"
    path.write_text("0,-1\n-1,0\n")
    code, report = run_cli(capsys, "check", str(path))
    assert code == 1


def test_not_strongly_connected_resistance_fails(capsys, tmp_path):
    path = tmp_path / "dag.edges"
    path.write_text("1 2 1\n1 3 1\n2 3 1\n")
    code, report = run_cli(capsys, "resistance", str(path))
    assert code == 1
    assert "strong" in report["error"]["message"]


def test_bad_keep_rejected(capsys, edge_file):
    code, report = run_cli(capsys, "kron", edge_file, "--keep", "1")
    assert code == 1
    code, report = run_cli(capsys, "kron", edge_file, "--keep", "1,9")
    assert code == 1


def test_output_is_byte_identical(capsys, edge_file):
    main(["curvature", edge_file])
    first = capsys.readouterr().out
    main(["curvature", edge_file])
    second = capsys.readouterr().out
    assert first == second


def test_reports_echo_inputs(capsys, edge_file):
    _, report = run_cli(capsys, "kron", edge_file, "--keep", "1,2,4")
    assert report["inputs"]["keep"] == "1,2,4"
    assert report["inputs"]["input"] == edge_file
    assert report["command"] == "kron"
