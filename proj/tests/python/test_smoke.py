"""Smoke tests for the Python bindings and the command-line tool."""

import json
import os
import subprocess
import sys

import pytest

import urmkit


def path_graph(n):
    return urmkit.Graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n):
    g = path_graph(n)
    g.add_edge(0, n - 1)
    return g


def complete_graph(n):
    return urmkit.Graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def test_graph_roundtrip():
    g = cycle_graph(4)
    text = urmkit.write_graph(g)
    back = urmkit.parse_graph(text)
    assert back.vertex_count == 4
    assert sorted(back.edges) == sorted(g.edges)


def test_verify_and_witness():
    c4 = cycle_graph(4)
    verdict = urmkit.verify(c4, [(0, 1), (2, 3)])
    assert not verdict["uniquely_restricted"]
    assert len(verdict["cycle"]) == 4
    assert urmkit.verify_by_enumeration(c4, [(0, 1), (2, 3)]) is False

    p4 = path_graph(4)
    assert urmkit.verify(p4, [(0, 1), (2, 3)])["uniquely_restricted"]


def test_solvers_agree_on_small_graphs():
    for g, expected in [(path_graph(4), 2), (cycle_graph(4), 1), (complete_graph(4), 1)]:
        assert urmkit.max_urm_brute(g)["size"] == expected
        assert urmkit.max_urm_bb(g)["size"] == expected
        assert urmkit.solve_treewidth(g)["size"] == expected


def test_random_graph_determinism():
    a = urmkit.random_graph(10, 0.3, 7)
    b = urmkit.random_graph(10, 0.3, 7)
    assert a.edges == b.edges


def test_line_and_root():
    line, vmap = urmkit.line_graph(path_graph(4))
    assert line.vertex_count == 3
    rooted = urmkit.root_graph(line)
    assert rooted is not None
    claw = urmkit.Graph(4, [(0, 1), (0, 2), (0, 3)])
    assert urmkit.root_graph(claw) is None


def test_line_decision():
    assert urmkit.urm_line_decide(path_graph(5), 2)["accepted"]
    assert not urmkit.urm_line_decide(urmkit.Graph(5, [(0, i) for i in range(1, 5)]), 2)[
        "accepted"
    ]


def test_gadget_arithmetic():
    out = urmkit.build_gadget(3, [[[1, 2, 3]]])
    assert out["graph"].vertex_count == 28
    assert out["target"] == 13


def test_counts():
    assert urmkit.partition_count(5) == 7
    assert [urmkit.free_tree_count(s) for s in (4, 5, 6)] == [2, 3, 6]


@pytest.fixture
def cli():
    exe = os.environ.get("URM_CLI")
    if not exe or not os.path.exists(exe):
        pytest.skip("URM_CLI not set")
    return exe


def test_cli_verify_and_solve(cli, tmp_path):
    graph = tmp_path / "c4.gr"
    graph.write_text("p urm 4 4\n0 1\n1 2\n2 3\n3 0\n")
    matching = tmp_path / "m.txt"
    matching.write_text("0 1\n2 3\n")

    out = subprocess.run([cli, "verify", str(graph), str(matching)], capture_output=True)
    assert out.returncode == 1  # verified negative

    report_path = tmp_path / "report.json"
    out = subprocess.run(
        [cli, "solve", str(graph), "--algo", "treewidth", "--json", str(report_path)],
        capture_output=True,
    )
    assert out.returncode == 0
    report = json.loads(report_path.read_text())
    assert report["schema"] == "urm-report/1"
    assert report["result"]["size"] == 1

    bad = subprocess.run([cli, "verify", str(tmp_path / "nope.gr"), str(matching)],
                         capture_output=True)
    assert bad.returncode == 2


def test_cli_gen_reproducible(cli, tmp_path):
    a = tmp_path / "a.gr"
    b = tmp_path / "b.gr"
    for target in (a, b):
        out = subprocess.run(
            [cli, "gen", "random", "--n", "10", "--p", "0.3", "--seed", "7",
             "--out", str(target)],
            capture_output=True,
        )
        assert out.returncode == 0
    assert a.read_bytes() == b.read_bytes()


def test_cli_forests(cli):
    out = subprocess.run([cli, "forests", "-l", "1"], capture_output=True, text=True)
    assert out.returncode == 0
    assert "p urm 3 2" in out.stdout
    assert "c total 1" in out.stdout


def test_cli_gadget(cli, tmp_path):
    doc = tmp_path / "e3c.json"
    doc.write_text(json.dumps({"n": 3, "instances": [[[1, 2, 3]]]}))
    prefix = tmp_path / "gadget"
    out = subprocess.run([cli, "gen", "gadget", "--e3c", str(doc), "--out", str(prefix)],
                         capture_output=True)
    assert out.returncode == 0
    meta = json.loads((tmp_path / "gadget.meta.json").read_text())
    assert meta["l"] == 13
    assert (tmp_path / "gadget.gr").exists()

    # Duplicate collections are a construction precondition.
    bad = tmp_path / "dup.json"
    bad.write_text(json.dumps({"n": 3, "instances": [[[1, 2, 3]], [[1, 2, 3]]]}))
    out = subprocess.run([cli, "gen", "gadget", "--e3c", str(bad), "--out", str(prefix)],
                         capture_output=True)
    assert out.returncode == 2


def test_cli_linegraph_translates_witness(cli, tmp_path):
    # P4 is the line graph of P5; the witness must come back in the
    # input graph's own vertex ids.
    graph = tmp_path / "p4.gr"
    graph.write_text("p urm 4 3\n0 1\n1 2\n2 3\n")
    report = tmp_path / "report.json"
    out = subprocess.run(
        [cli, "solve", str(graph), "--algo", "linegraph", "--l", "2",
         "--json", str(report)],
        capture_output=True,
    )
    assert out.returncode == 0
    doc = json.loads(report.read_text())
    assert doc["result"]["accepted"] is True
    witness = doc["result"]["witness"]
    assert len(witness) == 2
    assert all(0 <= v <= 3 for e in witness for v in e)

    out = subprocess.run(
        [cli, "solve", str(graph), "--algo", "linegraph", "--l", "3"],
        capture_output=True,
    )
    assert out.returncode == 1  # verified negative

    # A claw is not a line graph: input error with a recognition note.
    claw = tmp_path / "claw.gr"
    claw.write_text("p urm 4 3\n0 1\n0 2\n0 3\n")
    out = subprocess.run([cli, "solve", str(claw), "--algo", "linegraph", "--l", "1"],
                         capture_output=True)
    assert out.returncode == 2


def test_cli_linegraph_with_root_file(cli, tmp_path):
    host = tmp_path / "p5.gr"
    host.write_text("p urm 5 4\n0 1\n1 2\n2 3\n3 4\n")
    out = subprocess.run(
        [cli, "solve", str(host), "--algo", "linegraph", "--l", "2", "--root", str(host)],
        capture_output=True,
    )
    assert out.returncode == 0


def test_cli_solve_with_decomposition_file(cli, tmp_path):
    graph = tmp_path / "p3.gr"
    graph.write_text("p urm 3 2\n0 1\n1 2\n")
    td = tmp_path / "p3.td"
    td.write_text("s td 2 2 3\nb 1 0 1\nb 2 1 2\n1 2\n")
    report = tmp_path / "report.json"
    out = subprocess.run(
        [cli, "solve", str(graph), "--algo", "treewidth", "--td", str(td),
         "--json", str(report)],
        capture_output=True,
    )
    assert out.returncode == 0
    assert json.loads(report.read_text())["result"]["size"] == 1


def test_cli_bb_zero_budget_flags_incomplete(cli, tmp_path):
    graph = tmp_path / "c4.gr"
    graph.write_text("p urm 4 4\n0 1\n1 2\n2 3\n3 0\n")
    report = tmp_path / "report.json"
    out = subprocess.run(
        [cli, "solve", str(graph), "--algo", "bb", "--budget-nodes", "0",
         "--json", str(report)],
        capture_output=True,
    )
    assert out.returncode == 0
    doc = json.loads(report.read_text())
    assert doc["result"]["optimal"] is False
    assert doc["result"]["size"] >= 1  # greedy seed ran
