"""Command-line behavior: exit codes, output contracts, determinism."""

from __future__ import annotations

import pytest

from d2color.cli import main
from d2color.cnf import dpll_satisfiable, parse_dimacs
from d2color.coloring import parse_coloring, verify, write_coloring
from d2color.gadgets import sun_fanout, write_gadget
from d2color.graph import build_graph, parse_graph, write_graph

from conftest import DATA_DIR, cycle_graph


@pytest.fixture
def tiny_nae(tmp_path):
    path = tmp_path / "tiny.nae"
    path.write_text("p nae 1 1\n1 1 1 0\n", encoding="utf-8")
    return path


@pytest.fixture
def sat_nae(tmp_path):
    path = tmp_path / "sat.nae"
    path.write_text("p nae 2 1\n1 2 -1 0\n", encoding="utf-8")
    return path


@pytest.fixture
def c5_file(tmp_path):
    path = tmp_path / "c5.graph"
    path.write_text(write_graph(cycle_graph(5)), encoding="utf-8")
    return path


def test_reduce_reports_counts_and_writes_files(tiny_nae, tmp_path, capsys):
    g_out = tmp_path / "tiny.graph"
    p_out = tmp_path / "tiny.prov"
    code = main(["reduce", str(tiny_nae), str(g_out), str(p_out)])
    out = capsys.readouterr().out
    assert code == 0
    assert "fanout=4 variable=1 clause=1" in out
    assert "vertices=119 edges=130" in out
    g = parse_graph(g_out.read_text(encoding="utf-8"))
    assert len(g.edges) == 130
    hints = parse_coloring((tmp_path / "tiny.hints").read_text(encoding="utf-8"))
    assert hints and set(hints) <= set(g.edges)
    assert p_out.read_text(encoding="utf-8").startswith("fuse ")


def test_reduce_is_byte_deterministic(sat_nae, tmp_path):
    outs = []
    for tag in ("one", "two"):
        g_out = tmp_path / f"{tag}.graph"
        p_out = tmp_path / f"{tag}.prov"
        h_out = tmp_path / f"{tag}.hints"
        assert main(["reduce", str(sat_nae), str(g_out), str(p_out),
                     "--hints-out", str(h_out)]) == 0
        outs.append((g_out.read_bytes(), p_out.read_bytes(), h_out.read_bytes()))
    assert outs[0] == outs[1]


def test_reduce_bad_header_is_exit_2(tmp_path, capsys):
    bad = tmp_path / "bad.nae"
    bad.write_text("p naq 1 1\n", encoding="utf-8")
    code = main(["reduce", str(bad), str(tmp_path / "g"), str(tmp_path / "p")])
    err = capsys.readouterr().err
    assert code == 2
    assert "bad header" in err
    assert "line 1" in err


def test_reduce_accepts_empty_clause_list(tmp_path, capsys):
    src = tmp_path / "empty.nae"
    src.write_text("p nae 1 0\n", encoding="utf-8")
    code = main(["reduce", str(src), str(tmp_path / "g"), str(tmp_path / "p")])
    assert code == 0
    assert "clause=0" in capsys.readouterr().out


def test_solve_exit_codes_on_five_cycle(c5_file, tmp_path, capsys):
    assert main(["solve", str(c5_file), "4"]) == 1
    capsys.readouterr()
    out_file = tmp_path / "c5.col"
    assert main(["solve", str(c5_file), "5", "--out", str(out_file)]) == 0
    coloring = parse_coloring(out_file.read_text(encoding="utf-8"))
    assert verify(cycle_graph(5), coloring, 5).valid


def test_solve_budget_and_error_exits(c5_file, tmp_path, capsys):
    big = tmp_path / "big.graph"
    big.write_text(write_graph(cycle_graph(13)), encoding="utf-8")
    assert main(["solve", str(big), "2", "--node-budget", "1"]) == 3
    assert main(["solve", str(tmp_path / "nope.graph"), "5"]) == 2
    capsys.readouterr()


def test_config_file_sets_budget_and_flag_overrides(c5_file, tmp_path, capsys):
    conf = tmp_path / "run.conf"
    conf.write_text("solve_node_budget = 1\n", encoding="utf-8")
    big = tmp_path / "big.graph"
    big.write_text(write_graph(cycle_graph(13)), encoding="utf-8")
    assert main(["solve", str(big), "2", "--config", str(conf)]) == 3
    assert main(["solve", str(big), "2", "--config", str(conf),
                 "--node-budget", "100000"]) == 1
    capsys.readouterr()


def test_verify_command(c5_file, tmp_path, capsys):
    g = cycle_graph(5)
    good = tmp_path / "good.col"
    good.write_text(write_coloring(dict(zip(g.edges, "TF123"))),
                    encoding="utf-8")
    assert main(["verify", str(c5_file), str(good)]) == 0
    assert "valid" in capsys.readouterr().out

    bad = tmp_path / "bad.col"
    bad.write_text(write_coloring(dict(zip(g.edges, "TF12T"))),
                   encoding="utf-8")
    assert main(["verify", str(c5_file), str(bad), "--witnesses"]) == 1
    out = capsys.readouterr().out
    assert "invalid" in out
    assert "conflict" in out


def test_props_matches_report(tmp_path, capsys):
    path = tmp_path / "hex.graph"
    path.write_text(write_graph(cycle_graph(6)), encoding="utf-8")
    assert main(["props", str(path)]) == 0
    out = capsys.readouterr().out
    assert "girth 6" in out and "bipartite yes" in out
    assert main(["props", str(path), "--witnesses"]) == 0
    out = capsys.readouterr().out
    assert "peel-order" in out and "partition-class-1" in out


def test_certify_gadget_pass_fail_and_structural(tmp_path, capsys):
    good = tmp_path / "fanout.gadget"
    good.write_text(write_gadget(sun_fanout("even")), encoding="utf-8")
    assert main(["certify-gadget", str(good)]) == 0
    assert "passed, 61/61 scenarios" in capsys.readouterr().out

    # behavioral failure: a path does not copy colors
    path_fanout = build_graph([("a", "b"), ("b", "c"), ("c", "d")])
    behav = tmp_path / "path.gadget"
    behav.write_text(
        "v a\nv b\nv c\nv d\ne a b\ne b c\ne c d\n"
        "in a b a\nout c d d\nrole fanout 1\n", encoding="utf-8")
    assert main(["certify-gadget", str(behav)]) == 1
    out = capsys.readouterr().out
    assert "failed (behavioral)" in out and "counterexample" in out

    # structural failure: free endpoint with degree 2
    struct = tmp_path / "structural.gadget"
    struct.write_text(
        "v a\nv b\nv c\nv d\ne a b\ne b c\ne c d\n"
        "in b c b\nout c d d\nrole fanout 1\n", encoding="utf-8")
    assert main(["certify-gadget", str(struct)]) == 2
    assert "failed (structural)" in capsys.readouterr().out


def test_certify_gadget_default_library_via_data_dir(tmp_path, capsys):
    only = tmp_path / "fanout_even.gadget"
    only.write_text((DATA_DIR / "fanout_even.gadget").read_text(encoding="utf-8"),
                    encoding="utf-8")
    assert main(["certify-gadget", "--data-dir", str(tmp_path)]) == 0
    assert "passed" in capsys.readouterr().out


def test_roundtrip_exit_and_parallel_determinism(tiny_nae, sat_nae, capsys):
    assert main(["roundtrip", str(tiny_nae)]) == 0
    solo = capsys.readouterr().out
    assert "verdict: AGREE" in solo

    argv = ["roundtrip", str(tiny_nae), str(sat_nae)]
    assert main(argv + ["--jobs", "1"]) == 0
    sequential = capsys.readouterr().out
    assert main(argv + ["--jobs", "2"]) == 0
    parallel = capsys.readouterr().out
    assert sequential == parallel
    assert sequential.count("verdict: AGREE") == 2


def test_export_dot_shapes_and_labels(tmp_path, capsys):
    one = tmp_path / "one.graph"
    one.write_text("e a b\nv a\nv b\n", encoding="utf-8")
    assert main(["export-dot", str(one)]) == 0
    out = capsys.readouterr().out
    assert out.count("[shape=") == 2
    assert '"a" -- "b";' in out

    col = tmp_path / "one.col"
    col.write_text("c a b T\n", encoding="utf-8")
    assert main(["export-dot", str(one), str(col)]) == 0
    assert '[label="T"]' in capsys.readouterr().out

    bad = tmp_path / "bad.col"
    bad.write_text("c a b Z\n", encoding="utf-8")
    assert main(["export-dot", str(one), str(bad)]) == 2
    capsys.readouterr()


def test_export_dot_is_deterministic(tmp_path, capsys):
    path = tmp_path / "hex.graph"
    path.write_text(write_graph(cycle_graph(6)), encoding="utf-8")
    assert main(["export-dot", str(path)]) == 0
    first = capsys.readouterr().out
    assert main(["export-dot", str(path)]) == 0
    assert capsys.readouterr().out == first


def test_encode_cnf_round_trips_and_agrees(c5_file, tmp_path, capsys):
    assert main(["encode-cnf", str(c5_file), "4"]) == 0
    n, clauses = parse_dimacs(capsys.readouterr().out)
    assert n == 5 * 4
    assert not dpll_satisfiable(n, clauses)

    out_path = tmp_path / "c5.cnf"
    assert main(["encode-cnf", str(c5_file), "5", "--out", str(out_path)]) == 0
    n, clauses = parse_dimacs(out_path.read_text(encoding="utf-8"))
    assert dpll_satisfiable(n, clauses)
