import json
import subprocess
import sys

import pytest

from ribbon_moduli.cli import run
from ribbon_moduli.enumeration import enumerate_graphs
from ribbon_moduli.ribbon import canonical_form
from ribbon_moduli.serialize import graph_from_dict


def call(capsys, *argv):
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_enumerate_03(capsys):
    code, out, _ = call(capsys, "enumerate", "--genus", "0", "--cycles", "3")
    data = json.loads(out)
    assert code == 0 and data["count"] == 7
    assert sorted(c["shape"] for c in data["classes"]).count("figure eight") == 3


def test_enumerate_round_trip(capsys):
    _, out, _ = call(capsys, "enumerate", "--genus", "1", "--cycles", "2")
    data = json.loads(out)
    cat = enumerate_graphs((1, 2))
    got = [canonical_form(graph_from_dict(c["graph"])) for c in data["classes"]]
    assert got == [canonical_form(c.graph) for c in cat]


def test_enumerate_json_file(capsys, tmp_path):
    path = tmp_path / "out.json"
    code, out, _ = call(capsys, "enumerate", "--genus", "1", "--cycles", "1", "--json", str(path))
    assert code == 0 and out == ""
    assert json.loads(path.read_text(encoding="utf-8"))["count"] == 2


def test_complex_build_11_compact(capsys):
    code, out, _ = call(capsys, "complex", "build", "--genus", "1", "--cycles", "1", "--compact")
    stats = json.loads(out)["stats"]
    assert code == 0
    assert stats["boundary_circles"] == 1 and stats["cells_by_dim"] == [1, 2, 1]


def test_complex_build_open_rational_euler(capsys):
    _, out, _ = call(capsys, "complex", "build", "--genus", "1", "--cycles", "1")
    assert json.loads(out)["stats"]["orbifold_euler"] == "-1/12"


def test_polytope_permutohedron(capsys):
    _, out, _ = call(capsys, "polytope", "permutohedron", "--n", "4")
    data = json.loads(out)
    assert data["f_vector"] == [24, 36, 14] and data["euler_relation"]
    assert all("/" in x for v in data["vertices"] for x in v)


def test_polytope_nestohedron(capsys):
    _, out, _ = call(capsys, "polytope", "nestohedron", "--s", "4", "--cuts", "4;1,4;2,4;3,4")
    assert len(json.loads(out)["facets"]) == 8


def test_symmetric(capsys):
    _, out, _ = call(capsys, "symmetric", "--genus", "0", "--boundaries", "1", "--interior", "1",
                     "--boundary-marks", "1", "--compact")
    data = json.loads(out)
    assert data["cells_by_dim"] == [3, 2]
    assert data["invariants"] == {"double_type": {"genus": 0, "cycles": 3}, "euler": "-1/2", "dim": 1}


def test_export_dot_catalog(capsys):
    code, out, _ = call(capsys, "export-dot", "--genus", "0", "--cycles", "3", "--index", "0")
    assert code == 0 and out.startswith("graph ribbon {") and out.rstrip().endswith("}")


def test_export_dot_from_file(capsys, tmp_path):
    path = tmp_path / "g.json"
    path.write_text(json.dumps({"sigma0": [[1, 2, 3], [6, 5, 4]], "sigma1": [[1, 4], [2, 5], [3, 6]]}))
    code, out, _ = call(capsys, "export-dot", "--graph", str(path))
    assert code == 0 and out.count(" -- ") == 3


@pytest.mark.parametrize("argv", [
    ["export-dot", "--genus", "0", "--cycles", "3", "--index", "99"],
    ["enumerate", "--genus", "2", "--cycles", "1"],
    ["export-dot", "--graph", "/nonexistent/graph.json"],
    ["polytope", "nestohedron", "--s", "3", "--cuts", "1,2,3"],
])
def test_failures_exit_one(capsys, argv):
    code, out, err = call(capsys, *argv)
    assert code == 1 and out == ""
    assert err.startswith("error: ") and err.count("\n") == 1


def test_bad_graph_file(capsys, tmp_path):
    path = tmp_path / "g.json"
    path.write_text(json.dumps({"sigma0": [[1, 2]], "sigma1": [[1, 1]]}))
    code, _, err = call(capsys, "export-dot", "--graph", str(path))
    assert code == 1 and "NotInvolution" in err


@pytest.mark.parametrize("argv", [
    [],
    ["enumerate", "--genus", "-1", "--cycles", "3"],
    ["complex", "build", "--genus", "0", "--cycles", "3", "--alpha", "0.5"],
    ["export-dot", "--genus", "0"],
    ["--threads", "0", "enumerate", "--genus", "0", "--cycles", "3"],
])
def test_usage_errors_exit_two(capsys, argv):
    with pytest.raises(SystemExit) as info:
        run(argv)
    assert info.value.code == 2


@pytest.mark.parametrize("argv", [
    ["enumerate", "--genus", "0", "--cycles", "4"],
    ["complex", "build", "--genus", "0", "--cycles", "3", "--compact"],
    ["symmetric", "--genus", "0", "--boundaries", "1", "--interior", "1", "--boundary-marks", "2"],
])
def test_output_independent_of_threads(capsys, argv):
    _, one, _ = call(capsys, "--threads", "1", *argv)
    _, four, _ = call(capsys, "--threads", "4", *argv)
    assert one == four and one


def test_console_module_entry():
    proc = subprocess.run([sys.executable, "-m", "ribbon_moduli.cli", "enumerate", "--genus", "1", "--cycles", "1"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and json.loads(proc.stdout)["count"] == 2
