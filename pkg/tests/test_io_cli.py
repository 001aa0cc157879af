from __future__ import annotations

import json
import time

import pytest
from hypothesis import given, settings

from diameter_lab import io
from diameter_lab.cli import main
from diameter_lab.clm import complete_clm, example_hnp5, injective_clm, LegalSequence
from diameter_lab.complex_core import PureComplex, PureMulticomplex, canonical_form
from diameter_lab.constructions import corridor_2complex, nabla, octahedron_boundary
from diameter_lab.errors import InvalidComplex
from diameter_lab.suite import ExperimentSuite

from strategies import pure_complexes


# --- serialization -------------------------------------------------------------

@settings(max_examples=40)
@given(pure_complexes(max_n=7))
def test_complex_roundtrip_canonical(C):
    back = io.loads(io.dumps(C))
    assert back == C
    assert canonical_form(back)[0] == canonical_form(C)[0]


@pytest.mark.parametrize("obj", [
    corridor_2complex(13),
    nabla(2, 2),
    PureMulticomplex.from_facets([(2, 0), (1, 1)]),
    complete_clm(3, 2),
    injective_clm(3, 3),
    example_hnp5(),
    LegalSequence(2, (frozenset({1, 2}), frozenset({1, 2}))),
])
def test_object_roundtrip(obj, tmp_path):
    path = tmp_path / "obj.json"
    io.save(obj, path)
    back = io.load(path)
    assert io.to_dict(back) == io.to_dict(obj)
    assert json.loads(path.read_text())["schema"] == 1


def test_layers_follow_file_order():
    text = json.dumps({"kind": "layered-complex", "n": 3, "d": 2,
                       "facets": [[1, 2], [0, 1]], "layers": [1, 0]})
    M = io.loads(text)
    assert dict(zip(M.base.facets, M.layers)) == {(0, 1): 0, (1, 2): 1}


@pytest.mark.parametrize("text", [
    "not json",
    "[]",
    '{"schema": 2, "n": 2, "d": 1, "facets": [[0]]}',
    '{"n": 2, "d": 1}',
    '{"n": 2, "d": 1, "facets": [[0.5]]}',
    '{"n": 2, "d": 1, "facets": [[true]]}',
    '{"n": 2, "d": 2, "facets": [[0]]}',
    '{"n": 2, "d": 1, "facets": [[5]]}',
    '{"kind": "layered-complex", "n": 2, "d": 1, "facets": [[0], [1]], "layers": [0]}',
    '{"kind": "mystery"}',
])
def test_strict_loading(text):
    with pytest.raises(InvalidComplex):
        io.loads(text)


def test_dot_exports():
    dot = io.dual_graph_dot(octahedron_boundary())
    assert dot.startswith("graph") and dot.count("--") == 12
    layered = io.dual_graph_dot(complete_clm(2, 2))
    assert 'layer="' in layered and "rank=same" in layered
    johnson = io.johnson_graph_dot(4, 2, highlight=[(0, 1)])
    assert johnson.count("--") == 12 and "filled" in johnson


# --- CLI -------------------------------------------------------------------------

def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_construct_examples(capsys, tmp_path):
    code, out, _ = run(capsys, "construct", "corridor2", "--n", "13")
    assert code == 0 and len(json.loads(out)["facets"]) == 35
    code, out, _ = run(capsys, "construct", "nabla", "--a", "2", "--b", "2")
    assert code == 0 and len(json.loads(out)["facets"]) == 30
    code, out, _ = run(capsys, "construct", "complete", "--n", "3", "--d", "2")
    assert code == 0 and len(json.loads(out)["facets"]) == 3
    code, out, _ = run(capsys, "construct", "johnson-graph", "--n", "4", "--d", "2")
    assert code == 0 and out.startswith("graph")


def test_construct_output_file_and_join(capsys, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert main(["construct", "corridor2", "--n", "7", "--out", str(a)]) == 0
    assert main(["construct", "corridor2", "--n", "7", "--out", str(b)]) == 0
    code, out, _ = run(capsys, "construct", "join", "--inputs", str(a), str(b), "--corridor")
    assert code == 0
    assert io.loads(out).d == 6


def test_analyze_exit_codes(capsys, tmp_path):
    corridor = tmp_path / "corridor.json"
    main(["construct", "corridor2", "--n", "13", "--out", str(corridor)])
    assert run(capsys, "analyze", str(corridor), "--check", "corridor", "--diameter", "34")[0] == 0
    assert run(capsys, "analyze", str(corridor), "--diameter", "33")[0] == 1
    bary = tmp_path / "bary.json"
    main(["construct", "barycentric", "--d", "3", "--out", str(bary)])
    assert run(capsys, "analyze", str(bary), "--check", "flag", "--check", "normal")[0] == 0
    split = tmp_path / "split.json"
    io.save(PureComplex.from_facets([[0, 1], [2, 3]]), split)
    assert run(capsys, "analyze", str(split), "--show-diameter")[0] != 0
    assert run(capsys, "analyze", str(tmp_path / "missing.json"))[0] == 2


def test_input_errors_exit_two(capsys):
    assert run(capsys, "construct", "nabla", "--a", "2")[0] == 2
    assert run(capsys, "construct", "bogus")[0] == 2
    assert run(capsys, "bounds", "--n", "4", "--d", "4")[0] == 2


def test_caps_exit_three(capsys):
    assert run(capsys, "search", "johnson", "--n", "10", "--d", "4")[0] == 3
    assert run(capsys, "decompose", "--nabla", "2", "2", "--weak", "--budget", "1")[0] == 3


def test_decompose_expectations(capsys):
    code, out, _ = run(capsys, "decompose", "--nabla", "2", "2", "--weak", "--expect", "no")
    assert code == 0 and json.loads(out)["decomposable"] is False
    assert run(capsys, "decompose", "--nabla", "2", "2", "--weak", "--expect", "yes")[0] == 1
    code, out, _ = run(capsys, "decompose", "--obstruction", "2", "2")
    assert code == 0


def test_path_commands(capsys, tmp_path):
    bary = tmp_path / "bary.json"
    main(["construct", "barycentric", "--d", "3", "--out", str(bary)])
    C = io.load(bary)
    X, Y = C.facets[0], C.facets[-1]
    code, out, _ = run(capsys, "path", str(bary), "--from", ",".join(map(str, X)),
                       "--to", ",".join(map(str, Y)), "--trace")
    assert code == 0 and json.loads(out)["non_revisiting"]
    code, out, _ = run(capsys, "path", str(bary), "--all-pairs", "--jobs", "2")
    assert code == 0
    simplex = tmp_path / "simplex.json"
    main(["construct", "simplex-boundary", "--d", "3", "--out", str(simplex)])
    assert run(capsys, "path", str(simplex), "--all-pairs")[0] == 2


def test_bounds_csv(capsys):
    code, out, _ = run(capsys, "bounds", "--n", "25", "--d", "5", "--l", "6", "--format", "csv")
    assert code == 0
    assert out.splitlines()[0].startswith("name,kind")
    assert "spindle_excess" in out and "1/20" in out


def test_clm_commands(capsys):
    code, out, _ = run(capsys, "clm", "search", "--n", "3", "--d", "2")
    assert code == 0 and json.loads(out)["max_length"] == 4
    assert run(capsys, "clm", "legal", "--sets", "1/1")[0] == 1
    assert run(capsys, "clm", "legal", "--sets", "1,2/1,2")[0] == 0


def test_seed_makes_output_deterministic(capsys):
    a = run(capsys, "clm", "random", "--n", "3", "--d", "3", "--seed", "7")[1]
    b = run(capsys, "clm", "random", "--n", "3", "--d", "3", "--seed", "7")[1]
    assert a == b


# --- experiment suite ------------------------------------------------------------

def test_verify_small_is_fast_and_green(capsys):
    t0 = time.perf_counter()
    code, out, err = run(capsys, "verify-paper", "--scale", "small")
    assert time.perf_counter() - t0 < 60
    assert code == 0
    data = json.loads(out)
    assert data["passed"] and data["schema"] == 1
    assert err.count("PASS") == len(data["checks"])


@pytest.mark.parametrize("name", ["corridor-13", "clm-extremal", "bounds-table", "provan-billera"])
def test_injection_names_the_check(capsys, name):
    code, out, err = run(capsys, "verify-paper", "--scale", "small", "--inject", name)
    assert code == 1
    assert json.loads(out)["failed"] == [name]
    assert f"FAIL {name}" in err


def test_every_check_can_be_broken():
    suite = ExperimentSuite()
    for name in suite.names():
        res = suite.run("full", inject=name, only=[name])
        assert res.failed == [name], name


def test_unknown_injection_is_input_error(capsys):
    assert run(capsys, "verify-paper", "--inject", "nope")[0] == 2
