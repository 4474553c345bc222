"""CLI behavior: exit codes, JSON results, self-verification, determinism."""

import json
import subprocess
import sys

from splitfree.cli import run
from splitfree.constructions import EdgeColoring, write_coloring
from splitfree.graphs import read_split, write_graph, write_split
from conftest import cycle_graph

import numpy as np
from splitfree.graphs import Graph, SplitGraph


def invoke(capsys, *argv):
    code = run(list(argv))
    out = capsys.readouterr().out.strip()
    return code, json.loads(out) if out else None


def test_construct_affine(capsys, tmp_path):
    out = tmp_path / "aff.sg"
    code, result = invoke(capsys, "construct", "affine", "--p", "3", "-o", str(out))
    assert code == 0
    assert result["passed"] and result["n"] == 27 and result["k"] == 6
    assert result["seed"] == 0
    assert result["verification"]["passed"]
    assert result["forbidden"]["free"]
    split = read_split(out)
    assert split.n == 27


def test_construct_affine_bad_p(capsys):
    code, result = invoke(capsys, "construct", "affine", "--p", "9")
    assert code == 1
    assert result["error"]["type"] == "CompositeCharacteristic"


def test_pipeline_size_guard_exit(capsys):
    code, result = invoke(capsys, "construct", "c4pipeline", "--n", "100000")
    assert code == 1
    assert result["error"]["type"] == "SizeGuard"


def test_verify_roundtrip(capsys, tmp_path):
    out = tmp_path / "aff.sg"
    invoke(capsys, "construct", "affine", "--p", "2", "-o", str(out))
    code, result = invoke(capsys, "verify", "--input", str(out),
                          "--forbidden", "C4", "--mode", "lax")
    assert code == 0 and result["passed"]
    assert list(result["report"]) == ["mode", "passed", "missing_pairs",
                                      "multi_pairs", "internal_edges",
                                      "max_blob_size", "edge_count"]
    # strict mode fails on the raw (unpruned) affine split
    code, result = invoke(capsys, "verify", "--input", str(out), "--mode", "strict")
    assert code == 1 and not result["passed"]


def test_verify_edgeless_strict(capsys, tmp_path):
    path = tmp_path / "edgeless.sg"
    split = SplitGraph(Graph(2, np.empty((0, 2), np.int64)), np.array([0, 1]), 2, 1)
    write_split(split, path)
    code, result = invoke(capsys, "verify", "--input", str(path), "--mode", "strict")
    assert code == 1
    assert result["report"]["missing_pairs"] == [[0, 1]]


def test_prune_restrict_flow(capsys, tmp_path):
    raw = tmp_path / "raw.sg"
    pruned = tmp_path / "pruned.sg"
    restricted = tmp_path / "restricted.sg"
    invoke(capsys, "construct", "affine", "--p", "3", "-o", str(raw))
    code, result = invoke(capsys, "prune", "--input", str(raw), "-o", str(pruned))
    assert code == 0 and result["edges"] == 27 * 26 // 2
    code, result = invoke(capsys, "restrict", "--input", str(pruned),
                          "--n", "20", "-o", str(restricted))
    assert code == 0 and result["n"] == 20
    assert read_split(restricted).graph.V == 20 * 6


def test_random_split_cli(capsys, tmp_path):
    host = tmp_path / "host.sg"
    out = tmp_path / "rnd.sg"
    invoke(capsys, "construct", "affine", "--p", "2", "-o", str(host))
    code, result = invoke(capsys, "random-split", "--input", str(host),
                          "--n", "4", "--trials", "500", "--seed", "0",
                          "--forbidden", "C4", "-o", str(out))
    assert code == 0 and result["accepted"]
    assert result["k"] <= result["k_cap"]
    assert result["verification"]["passed"] and result["forbidden"]["free"]


def test_random_split_failure(capsys, tmp_path):
    host = tmp_path / "c6.g"
    write_graph(cycle_graph(6), host)
    code, result = invoke(capsys, "random-split", "--input", str(host),
                          "--n", "6", "--k-cap", "1", "--trials", "20")
    assert code == 1 and not result["accepted"]
    stats = result["failure_stats"]
    assert stats["size_failures"] + stats["pair_failures"] == 20


def test_construct_star_and_bipartite(capsys, tmp_path):
    code, result = invoke(capsys, "construct", "star", "--n", "8", "--t", "4",
                          "-o", str(tmp_path / "star.sg"))
    assert code == 0 and result["k"] == 3 and result["forbidden"]["free"]
    code, result = invoke(capsys, "construct", "bipartite", "--n", "10")
    assert code == 0 and result["k"] == 2
    assert result["forbidden"]["spec"] == "any non-bipartite graph"


def test_construct_from_coloring(capsys, tmp_path):
    cycle_a = [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)]
    cycle_b = [(0, 2), (2, 4), (1, 4), (1, 3), (0, 3)]
    color = {tuple(sorted(e)): 0 for e in cycle_a}
    color.update({tuple(sorted(e)): 1 for e in cycle_b})
    path = tmp_path / "two_c5.ec"
    write_coloring(EdgeColoring(5, 2, color), path)
    code, result = invoke(capsys, "construct", "from-coloring",
                          "--input", str(path), "--forbidden", "C3",
                          "-o", str(tmp_path / "out.sg"))
    assert code == 0 and result["n"] == 5 and result["k"] == 2
    assert result["forbidden"]["free"]


def test_diagnose_estimate(capsys, tmp_path):
    host = tmp_path / "c6.g"
    write_graph(cycle_graph(6), host)
    code, result = invoke(capsys, "diagnose", "--input", str(host), "--n", "2")
    assert code == 0
    assert result["janson"]["mu"] == 3.0 and result["janson"]["D"] == 1.5
    assert result["log_convention"] == "natural logarithm"
    code, result = invoke(capsys, "estimate", "--input", str(host), "--n", "2",
                          "--samples", "20000", "--seed", "0")
    assert code == 0
    assert abs(result["estimate"]["estimate"] - 1 / 32) <= 4 * result["estimate"]["stderr"]


def test_trim_cli(capsys, tmp_path):
    host = tmp_path / "c10s.g"
    edges = [(i, (i + 1) % 10) for i in range(10)]
    edges += [(10 + i, 10 + (i + 1) % 10) for i in range(10)]
    write_graph(Graph(20, np.array(edges)), host)
    code, result = invoke(capsys, "trim", "--input", str(host), "--b", "1.5",
                          "--q", "10", "-o", str(tmp_path / "trimmed.g"))
    assert code == 0 and result["case"] == 2 and result["edges"] == 17


def test_bounds_cli(capsys):
    code, result = invoke(capsys, "bounds", "--forbidden", "C4", "--n", "1000")
    assert code == 0
    assert result["report"]["f_lower"] == 9 and result["report"]["f_upper"] == 22
    code, result = invoke(capsys, "bounds", "--ramsey", "--t", "3", "--k", "2")
    assert code == 0 and result["ramsey"]["lower"] == 3 and result["ramsey"]["upper"] == 13


def test_usage_errors(capsys):
    assert run(["bogus"]) == 2
    assert run(["construct", "affine"]) == 2              # missing --p
    assert run(["bounds"]) == 2                           # missing spec
    assert run(["bounds", "--ramsey", "--t", "3"]) == 2   # missing --k
    assert run(["verify", "--input", "/nonexistent.sg"]) == 2
    err = capsys.readouterr().err
    assert err.count("usage error") == 5


def test_deterministic_outputs(capsys, tmp_path):
    pairs = [
        (["construct", "affine", "--p", "3"], "a"),
        (["construct", "c4pipeline", "--n", "27"], "b"),
        (["construct", "star", "--n", "10", "--t", "3"], "c"),
        (["construct", "bipartite", "--n", "6"], "d"),
    ]
    for argv, stem in pairs:
        f1, f2 = tmp_path / f"{stem}1.sg", tmp_path / f"{stem}2.sg"
        assert run(argv + ["-o", str(f1)]) == 0
        assert run(argv + ["-o", str(f2)]) == 0
        capsys.readouterr()
        assert f1.read_bytes() == f2.read_bytes()


def test_console_entry_point(tmp_path):
    proc = subprocess.run(
        [sys.executable, "-m", "splitfree.cli", "construct", "affine", "--p", "2",
         "-o", str(tmp_path / "x.sg")],
        capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["passed"]
