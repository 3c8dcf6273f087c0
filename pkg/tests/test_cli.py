import io
import json
import math
import subprocess
import sys

import pytest

from tensor_perron import SparseTensor, complete_hypergraph, write_tensor
from tensor_perron.cli import main

BOUNDS_KEYS = {"rho", "intervals", "all_contain_rho"}
INTERVAL_KEYS = {"theorem", "low", "high", "low_witness", "high_witness"}


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(map(str, argv)), out=out, err=err)
    return code, out.getvalue(), err.getvalue()


@pytest.fixture
def files(tmp_path):
    paths = {}

    def tensor(name, t):
        paths[name] = tmp_path / f"{name}.json"
        write_tensor(t, paths[name])

    def text(name, body):
        paths[name] = tmp_path / name
        paths[name].write_text(body)

    tensor("swap", SparseTensor(2, 2, {(1, 2): 2.0, (2, 1): 3.0}))
    tensor("ones", SparseTensor(3, 2, {(i, j, k): 1.0 for i in (1, 2) for j in (1, 2) for k in (1, 2)}))
    tensor("loops", SparseTensor(3, 2, {(1, 1, 1): 1.0, (2, 2, 2): 1.0}))
    tensor("dag", SparseTensor(2, 3, {(1, 2): 1.0, (2, 3): 1.0}))
    text("bad.json", '{"order": 2, "dim": 2, "entries": [{"idx": [1, 2], "val": -1}]}')
    h = complete_hypergraph(3, 4)
    text("k4.txt", "3 4\n" + "".join(" ".join(map(str, e)) + "\n" for e in h.edges))
    text("split.txt", "3 6\n1 2 3\n4 5 6\n")
    text("badh.txt", "3 4\n1 2\n")
    text("path.txt", "2 3\n1 2\n2 3\n")
    text("x.json", "[1.0, 2.0]")
    text("xbad.json", "[1.0, 0.0]")
    return paths


class TestCheck:
    def test_two_cycle(self, files):
        code, out, _ = run("check", files["swap"])
        doc = json.loads(out)
        assert code == 0
        assert doc["weakly_irreducible"] is True and doc["girth"] == 2
        assert (doc["vertices"], doc["arcs"]) == (2, 2)

    def test_two_loops(self, files):
        doc = json.loads(run("check", files["loops"])[1])
        assert doc["weakly_irreducible"] is False

    def test_acyclic_girth_null(self, files):
        doc = json.loads(run("check", files["dag"])[1])
        assert doc["girth"] is None

    def test_disconnected_hypergraph(self, files):
        code, out, _ = run("check", files["split.txt"], "--hypergraph")
        doc = json.loads(out)
        assert code == 0
        assert doc["connected"] is False and doc["weakly_irreducible"] is False

    def test_connected_hypergraph_laplacian(self, files):
        doc = json.loads(run("check", files["k4.txt"], "--hypergraph", "--which", "laplacian")[1])
        assert doc["connected"] and doc["weakly_irreducible"] and doc["girth"] == 1


class TestRho:
    def test_matrix(self, files):
        code, out, _ = run("rho", files["swap"])
        doc = json.loads(out)
        assert code == 0
        assert doc["rho"] == pytest.approx(math.sqrt(6), abs=1e-9)
        assert set(doc) == {"rho", "bracket", "iterations", "residual", "vector"}
        assert doc["bracket"][0] <= doc["rho"] <= doc["bracket"][1]

    def test_ones(self, files):
        assert json.loads(run("rho", files["ones"])[1])["rho"] == 4.0

    def test_hypergraph(self, files):
        doc = json.loads(run("rho", files["k4.txt"], "--hypergraph", "--which", "adjacency")[1])
        assert doc["rho"] == pytest.approx(3.0, abs=1e-9)
        doc = json.loads(run("rho", files["k4.txt"], "--hypergraph", "--which", "laplacian")[1])
        assert doc["rho"] == pytest.approx(6.0, abs=1e-9)

    def test_reducible_exit_1(self, files):
        code, out, err = run("rho", files["loops"])
        assert code == 1 and out == "" and "not weakly irreducible" in err

    def test_nonconvergence_exit_2(self, files):
        code, out, _ = run("rho", files["path.txt"], "--hypergraph", "--max-iter", "2", "--tolerance", "1e-300")
        doc = json.loads(out)
        assert code == 2 and len(doc["bracket"]) == 2 and doc["iterations"] == 2
        assert doc["bracket"][0] <= math.sqrt(2) <= doc["bracket"][1]

    def test_bad_tolerance_exit_1(self, files):
        assert run("rho", files["swap"], "--tolerance", "-1")[0] == 1

    def test_determinism(self, files):
        assert run("rho", files["swap"])[1] == run("rho", files["swap"])[1]


class TestBounds:
    def test_matrix_json(self, files):
        code, out, _ = run("bounds", files["swap"])
        doc = json.loads(out)
        assert code == 0 and set(doc) == BOUNDS_KEYS and doc["all_contain_rho"] is True
        for row in doc["intervals"]:
            assert set(row) == INTERVAL_KEYS
            assert (row["low"], row["high"]) == pytest.approx((math.sqrt(6), math.sqrt(6)), rel=1e-9)

    def test_regular_hypergraph(self, files):
        doc = json.loads(run("bounds", files["k4.txt"], "--hypergraph")[1])
        for row in doc["intervals"]:
            assert (row["low"], row["high"]) == pytest.approx((3.0, 3.0), rel=1e-9)

    def test_x_perron_collapses(self, files):
        doc = json.loads(run("bounds", files["path.txt"], "--hypergraph", "--which", "laplacian", "--x", "perron")[1])
        scaled = next(r for r in doc["intervals"] if r["theorem"] == "ScaledCircuit")
        assert scaled["high"] - scaled["low"] <= 1e-8

    def test_x_file(self, files):
        doc = json.loads(run("bounds", files["swap"], "--x", files["x.json"])[1])
        assert doc["all_contain_rho"]

    @pytest.mark.parametrize("name", ["xbad.json", "missing.json"])
    def test_bad_x_exit_1(self, files, tmp_path, name):
        path = files.get(name, tmp_path / name)
        assert run("bounds", files["swap"], "--x", path)[0] == 1

    def test_table(self, files):
        code, out, _ = run("bounds", files["swap"], "--format", "table")
        lines = out.splitlines()
        assert code == 0 and lines[0].startswith("rho = 2.44948974")
        assert lines[1].split() == ["theorem", "low", "high", "low_witness", "high_witness", "contains_rho"]
        assert len(lines) == 6 and all(line.split()[-1] == "true" for line in lines[2:])
        assert lines[2].split()[3] == "1,2"

    def test_determinism(self, files):
        assert run("bounds", files["k4.txt"], "--hypergraph")[1] == run("bounds", files["k4.txt"], "--hypergraph")[1]


class TestOtherCommands:
    def test_girth(self, files):
        assert json.loads(run("girth", files["swap"])[1]) == {"girth": 2}

    def test_girth_acyclic_exit_2(self, files):
        assert run("girth", files["dag"])[0] == 2

    def test_mean_cycle(self, files):
        doc = json.loads(run("mean-cycle", files["swap"], "--sense", "max")[1])
        assert doc["value"] == pytest.approx(math.sqrt(6), rel=1e-14) and doc["witness"] == [1, 2]

    def test_mean_cycle_weights(self, files):
        doc = json.loads(run("mean-cycle", files["swap"], "--weights", files["x.json"])[1])
        assert doc["value"] == pytest.approx(math.sqrt(2), rel=1e-14)

    def test_digraph_dump(self, files):
        assert run("digraph", files["swap"])[1] == "1 2\n2 1\n"

    def test_hypergraph_emit(self, files, tmp_path):
        code, out, _ = run("hypergraph", files["path.txt"], "--which", "laplacian")
        doc = json.loads(out)
        assert code == 0 and doc["order"] == 2 and doc["dim"] == 3
        assert {tuple(e["idx"]): e["val"] for e in doc["entries"]} == {
            (1, 1): 1, (1, 2): 1, (2, 1): 1, (2, 2): 2, (2, 3): 1, (3, 2): 1, (3, 3): 1
        }
        # the emitted document is itself a valid tensor file
        path = tmp_path / "emitted.json"
        path.write_text(out)
        assert json.loads(run("rho", path)[1])["rho"] == pytest.approx(3.0, abs=1e-9)


EXIT_MATRIX = [
    ("swap", [], 0),
    ("bad.json", [], 1),
    ("loops", [], 1),
    ("k4.txt", ["--hypergraph"], 0),
    ("badh.txt", ["--hypergraph"], 1),
    ("split.txt", ["--hypergraph"], 1),
]


@pytest.mark.parametrize("command", ["rho", "bounds"])
@pytest.mark.parametrize("name, flags, expected", EXIT_MATRIX)
def test_exit_code_contract(files, command, name, flags, expected):
    code, out, err = run(command, files[name], *flags)
    assert code == expected
    if expected == 0:
        json.loads(out)
    else:
        assert err.startswith("error:")


def test_parse_error_reports_location(files):
    code, _, err = run("check", files["badh.txt"], "--hypergraph")
    assert code == 1 and "badh.txt:2" in err


def test_module_entry_point(files):
    proc = subprocess.run(
        [sys.executable, "-m", "tensor_perron", "rho", str(files["swap"])], capture_output=True, text=True
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["rho"] == pytest.approx(math.sqrt(6), abs=1e-9)


SCHEMA_CASES = [
    (["check", "swap"], "CHECK"),
    (["check", "split.txt", "--hypergraph"], "CHECK"),
    (["rho", "swap"], "RHO"),
    (["rho", "k4.txt", "--hypergraph", "--which", "laplacian"], "RHO"),
    (["rho", "path.txt", "--hypergraph", "--max-iter", "2", "--tolerance", "1e-300"], "FAILURE"),
    (["bounds", "swap"], "BOUNDS_REPORT"),
    (["bounds", "ones", "--x", "perron"], "BOUNDS_REPORT"),
    (["bounds", "path.txt", "--hypergraph", "--which", "laplacian"], "BOUNDS_REPORT"),
    (["mean-cycle", "ones"], "MEAN_CYCLE"),
    (["hypergraph", "k4.txt", "--which", "laplacian"], "TENSOR"),
]


@pytest.mark.parametrize("argv, schema", SCHEMA_CASES)
def test_output_validates_against_schema(files, argv, schema):
    jsonschema = pytest.importorskip("jsonschema")
    from tensor_perron import schemas

    command, name, *rest = argv
    _, out, _ = run(command, files[name], *rest)
    jsonschema.validate(json.loads(out), getattr(schemas, schema))
