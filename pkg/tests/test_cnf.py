"""DIMACS encoding of coloring instances, parser, and DPLL cross-checks."""

from __future__ import annotations

import random

import pytest

from d2color.cnf import dpll_satisfiable, encode_cnf, parse_dimacs
from d2color.coloring import solve

from conftest import cycle_graph, path_graph, random_graph


def _cnf_sat(g, k, hints=None) -> bool:
    n, clauses = parse_dimacs(encode_cnf(g, k, hints=hints))
    return dpll_satisfiable(n, clauses)


def test_variable_count_is_edges_times_k():
    g = path_graph(3)
    n, clauses = parse_dimacs(encode_cnf(g, 5))
    assert n == 3 * 5
    assert all(all(lit != 0 for lit in cl) for cl in clauses)


def test_encoding_matches_solver_on_anchors():
    assert not _cnf_sat(cycle_graph(5), 4)
    assert _cnf_sat(cycle_graph(5), 5)
    assert _cnf_sat(cycle_graph(6), 3)
    assert not _cnf_sat(cycle_graph(6), 2)


def test_encoding_matches_solver_on_random_graphs():
    rng = random.Random(23)
    for _ in range(20):
        g = random_graph(rng, max_edges=7)
        for k in (2, 3, 5):
            assert _cnf_sat(g, k) == (solve(g, k).status == "sat"), (g, k)


def test_hints_become_unit_clauses():
    g = path_graph(2)
    e0 = g.edges[0]
    base = parse_dimacs(encode_cnf(g, 5))[1]
    hinted = parse_dimacs(encode_cnf(g, 5, hints={e0: "T"}))[1]
    units = [cl for cl in hinted if len(cl) == 1]
    assert len(units) == len([cl for cl in base if len(cl) == 1]) + 1


def test_hinted_encoding_tracks_hinted_solve():
    g = cycle_graph(6)
    e0, e1 = g.edges[0], g.edges[1]
    # same-color pins on conflicting edges kill the instance
    assert not _cnf_sat(g, 3, hints={e0: "k1", e1: "k1"})
    assert _cnf_sat(g, 3, hints={e0: "k1"})


def test_parse_dimacs_round_trip_and_errors():
    text = "c comment\np cnf 3 2\n1 -2 0\n2 3 0\n"
    n, clauses = parse_dimacs(text)
    assert n == 3
    assert clauses == [(1, -2), (2, 3)]
    with pytest.raises(ValueError):
        parse_dimacs("1 2 0\n")  # clause before header
