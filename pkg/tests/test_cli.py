"""Command-line surface: formats, determinism, exit codes."""

import json

import pytest

from cupi.cli import main

from conftest import RP2_FACETS


@pytest.fixture()
def files(tmp_path):
    paths = {}

    def write(name, obj):
        p = tmp_path / name
        p.write_text(json.dumps(obj))
        paths[name] = str(p)

    write("rp2.json", {"facets": [list(f) for f in RP2_FACETS]})
    write("tri.json", {"facets": [[0, 1, 2]]})
    write("delta3.json", {"facets": [[0, 1, 2, 3]]})
    write("circle.json", {"facets": [[0, 1], [0, 2], [1, 2]]})
    write("d1.json", {"facets": [[0, 1]]})
    write("id_d1.json", {"0": [[[0], [0], 1], [[1], [1], 1]],
                         "1": [[[0, 1], [0, 1], 1]]})
    write("flip_d1.json", {"0": [[[0], [0], 1], [[1], [1], 1]],
                           "1": [[[0, 1], [0, 1], -1]]})
    write("bad.json", {"facets": [[2, 1]]})
    write("isolated.json", {"vertices": [0, 1, 2, 7], "facets": [[0, 1, 2]]})
    write("undeclared.json", {"vertices": [0, 1], "facets": [[0, 1, 2]]})
    write("misbinned.json", {"0": [[[0, 1], [0, 1], 1]]})
    return paths


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


class TestValidate:
    def test_ok(self, files, capsys):
        code, out = run(capsys, "validate", files["rp2.json"])
        assert code == 0
        assert json.loads(out) == {"ok": True, "f_vector": [6, 15, 10], "dim": 2}

    def test_closure_violation_is_input_error(self, files, capsys):
        code, _ = run(capsys, "validate", files["bad.json"])
        assert code == 2

    def test_missing_file(self, capsys):
        code, _ = run(capsys, "validate", "/no/such/file.json")
        assert code == 2

    def test_declared_isolated_vertex(self, files, capsys):
        code, out = run(capsys, "validate", files["isolated.json"])
        assert code == 0
        assert json.loads(out)["f_vector"] == [4, 3, 1]

    def test_undeclared_vertex_rejected(self, files, capsys):
        code, _ = run(capsys, "validate", files["undeclared.json"])
        assert code == 2


class TestChains:
    def test_interval_boundary_triples(self, files, capsys):
        code, out = run(capsys, "chains", files["d1.json"])
        assert code == 0
        data = json.loads(out)
        assert data["ranks"] == [2, 1]
        assert data["boundaries"]["1"] == [[[0], [0, 1], -1], [[1], [0, 1], 1]]


class TestHomology:
    def test_rp2_report(self, files, capsys):
        code, out = run(capsys, "homology", files["rp2.json"])
        assert code == 0
        assert json.loads(out) == {"H": [
            {"degree": 0, "betti": 1, "torsion": []},
            {"degree": 1, "betti": 0, "torsion": [2]},
            {"degree": 2, "betti": 0, "torsion": []}]}


class TestXi:
    def test_check_passes(self, files, capsys):
        code, out = run(capsys, "xi-check", files["tri.json"], "--max-i", "6")
        assert code == 0
        assert json.loads(out) == {"status": "pass"}

    def test_check_delta3_max_i_6(self, files, capsys):
        code, out = run(capsys, "xi-check", files["delta3.json"],
                        "--max-i", "6")
        assert code == 0
        assert json.loads(out) == {"status": "pass"}

    def test_dump_lines_parse(self, files, capsys):
        code, out = run(capsys, "xi-dump", files["d1.json"])
        assert code == 0
        lines = [json.loads(line) for line in out.splitlines()]
        assert all(set(rec) == {"i", "simplex", "value"} for rec in lines)
        top = [rec for rec in lines
               if rec["simplex"] == [0, 1] and rec["i"] == 1]
        assert top == [{"i": 1, "simplex": [0, 1],
                        "value": [[-1, [0, 1], [0, 1]]]}]


class TestSquares:
    def test_sq1_rp2(self, files, capsys):
        code, out = run(capsys, "squares", files["rp2.json"], "--i", "1")
        assert code == 0
        assert json.loads(out)["matrices"]["1"] == [[1]]


class TestEnumerate:
    def test_count_and_order(self, files, capsys):
        code, out = run(capsys, "enumerate", files["circle.json"], "--n", "1")
        assert code == 0
        data = json.loads(out)
        assert data["count"] == 6
        keys = [(m["simplex"], m["surjection"]) for m in data["morphisms"]]
        assert keys == sorted(keys)

    def test_brute_mode_flag(self, files, capsys):
        code, out = run(capsys, "enumerate", files["circle.json"], "--n", "1",
                        "--mode", "brute", "--bound", "2")
        assert code == 0
        assert json.loads(out)["count"] == 6

    def test_brute_size_cap_is_input_error(self, files, capsys):
        code, _ = run(capsys, "enumerate", files["rp2.json"], "--n", "1",
                      "--mode", "brute")
        assert code == 2


class TestMorphismCommands:
    def test_identity_is_morphism(self, files, capsys):
        code, out = run(capsys, "is-morphism", files["d1.json"],
                        files["d1.json"], files["id_d1.json"])
        assert code == 0
        assert json.loads(out)["status"] == "morphism"

    def test_sign_flip_rejected_exit1(self, files, capsys):
        code, out = run(capsys, "is-morphism", files["d1.json"],
                        files["d1.json"], files["flip_d1.json"])
        assert code == 1
        data = json.loads(out)
        assert data["status"] in ("not_morphism", "not_chain_map")
        assert data["witness"] is not None

    def test_lift_identity(self, files, capsys):
        code, out = run(capsys, "lift", files["d1.json"], files["d1.json"],
                        files["id_d1.json"])
        assert code == 0
        data = json.loads(out)
        assert data["vertex_map"] == {"0": 0, "1": 1}
        assert data["isomorphism"] == {"0": 0, "1": 1}

    def test_homology_square(self, files, capsys):
        code, out = run(capsys, "homology-square", files["d1.json"],
                        files["d1.json"], files["id_d1.json"], "--i-max", "1")
        assert code == 0
        assert json.loads(out)["status"] == "pass"

    def test_misbinned_triple_is_input_error(self, files, capsys):
        code, _ = run(capsys, "is-morphism", files["d1.json"],
                      files["d1.json"], files["misbinned.json"])
        assert code == 2


class TestReconstruct:
    def test_triangle(self, files, capsys):
        code, out = run(capsys, "reconstruct", files["tri.json"],
                        "--up-to", "3")
        assert code == 0
        assert json.loads(out)["status"] == "pass"


class TestDeterminism:
    def test_byte_identical_outputs(self, files, capsys):
        for argv in (["homology", files["rp2.json"]],
                     ["enumerate", files["circle.json"], "--n", "2"],
                     ["xi-dump", files["tri.json"], "--max-i", "3"],
                     ["squares", files["rp2.json"], "--i", "1"]):
            _, first = run(capsys, *argv)
            _, second = run(capsys, *argv)
            assert first == second
