"""NAE-3SAT parsing, compilation, templates, and the equivalence scaffolding."""

from __future__ import annotations

import pytest
from hypothesis import given, strategies as st

from d2color.coloring import solve, verify
from d2color.graph import girth, structural_report
from d2color.reduction import (ColoringRejected, Literal, NaeFormatError,
                               NaeInstance, assignment_to_coloring, check_nae,
                               coloring_to_assignment, compile_instance,
                               nae_brute_force, parse_nae, parse_provenance,
                               roundtrip_report, skeleton_pins, write_nae,
                               write_provenance)

from conftest import nae_instances


def lit(v: int) -> Literal:
    return Literal(abs(v), v > 0)


def inst_of(n: int, *clauses: tuple[int, int, int]) -> NaeInstance:
    return NaeInstance(num_vars=n,
                       clauses=[tuple(lit(x) for x in cl) for cl in clauses])


def occurrence_stats(inst: NaeInstance) -> tuple[int, int]:
    """(total occurrences, number of never-occurring variable sides)."""
    seen = set()
    for cl in inst.clauses:
        for l in cl:
            seen.add((l.var, l.positive))
    zero = 2 * inst.num_vars - len(seen)
    return 3 * inst.num_clauses, zero


# ---------------------------------------------------------------------------
# text format

def test_parse_nae_happy_path():
    inst = parse_nae("c comment\np nae 2 2\n1 -2 1 0\nc mid\n-1 2 2 0\n")
    assert inst.num_vars == 2
    assert inst.clauses[0] == (lit(1), lit(-2), lit(1))
    assert inst.clauses[1] == (lit(-1), lit(2), lit(2))


def test_write_nae_round_trips():
    inst = inst_of(3, (1, -2, 3), (-3, 2, 2))
    assert parse_nae(write_nae(inst)) == inst


@pytest.mark.parametrize("text,line,column,needle", [
    ("p naq 1 1\n1 1 1 0\n", 1, 1, "bad header"),
    ("p nae x 1\n", 1, 7, "counts must be integers"),
    ("p nae 1 1\n1 2 1 0\n", 2, 3, "out of range"),
    ("p nae 1 1\n1 1 1\n", 2, 5, "missing terminating 0"),
    ("p nae 1 1\n1 1 1 0 7\n", 2, 9, "content after terminating 0"),
    ("p nae 1 1\n1 1 0\n", 2, 1, "has 2 literals"),
    ("p nae 1 2\n1 1 1 0\n", 2, 1, "expected 2 clause lines, found 1"),
    ("p nae 1 0\n1 1 1 0\n", 2, 1, "found more"),
])
def test_parse_nae_errors_carry_position(text, line, column, needle):
    with pytest.raises(NaeFormatError) as exc:
        parse_nae(text)
    assert exc.value.line == line
    assert exc.value.column == column
    assert needle in str(exc.value)


# ---------------------------------------------------------------------------
# assignments

def test_check_nae():
    inst = inst_of(2, (1, 2, -1))
    assert check_nae(inst, (True, True)) == (True, None)
    assert check_nae(inst, (True, False)) == (True, None)
    all_equal = inst_of(1, (1, 1, 1))
    assert check_nae(all_equal, (True,)) == (False, 1)
    assert check_nae(all_equal, (False,)) == (False, 1)


def test_nae_brute_force_first_witness_is_lexicographic():
    sat, witness = nae_brute_force(inst_of(2, (1, 2, 2)))
    assert sat and witness == (False, True)
    sat, witness = nae_brute_force(inst_of(1, (1, 1, 1)))
    assert not sat and witness is None
    with pytest.raises(ValueError, match="guard"):
        nae_brute_force(NaeInstance(num_vars=30, clauses=[]), var_guard=24)


# ---------------------------------------------------------------------------
# compilation

def test_compile_rejects_zero_variables():
    with pytest.raises(ValueError, match="at least one variable"):
        compile_instance(NaeInstance(num_vars=0, clauses=[]))


def test_gadget_instance_counts():
    for inst in (inst_of(1), inst_of(1, (1, 1, -1)),
                 inst_of(3, (1, 2, 3), (-1, -2, -3))):
        counts = compile_instance(inst).instance_counts()
        assert counts["fanout"] == 2 * inst.num_vars + 2
        assert counts["variable"] == inst.num_vars
        assert counts["clause"] == inst.num_clauses


@given(nae_instances(n_max=4, m_max=4))
def test_exact_size_formulas(inst):
    art = compile_instance(inst)
    n, m = inst.num_vars, inst.num_clauses
    _, z = occurrence_stats(inst)
    assert art.zero_width_pairs == z
    assert len(art.graph.vertices) == 44 * n + 75 * m + 12 * z - 12
    assert len(art.graph.edges) == 49 * n + 84 * m + 13 * z - 16
    # inter-instance fusions: chains feed variables, variables feed literal
    # chains, literal chains feed clause inputs
    assert len(art.wiring) == 4 * n + 3 * m
    assert len(art.pinned_hints) == 6 * n - 2


def test_structural_claims_on_samples():
    for inst in (inst_of(1), inst_of(2, (1, 2, -1)),
                 inst_of(3, (1, -2, 3), (2, 3, -1))):
        rep = structural_report(compile_instance(inst).graph)
        assert rep.is_bipartite
        assert rep.max_degree == 3
        assert rep.girth == 6
        assert rep.inductiveness == 2


def test_duplicate_literals_compile_and_stay_sound():
    inst = inst_of(2, (1, 1, 2))
    art = compile_instance(inst)
    assert girth(art.graph) is not None
    rep = roundtrip_report(inst)
    assert rep.agree


def test_pinned_hints_pin_chain_boundaries():
    art = compile_instance(inst_of(1))
    assert len(art.pinned_hints) == 4
    for (u, v), label in art.pinned_hints.items():
        owner = u.split(":")[0]
        assert owner in ("truth", "false") or v.split(":")[0] in ("truth", "false")
        expected = "T" if "truth" in (u.split(":")[0], v.split(":")[0]) else "F"
        assert label == expected


def test_skeleton_pins_extend_the_hints():
    inst = inst_of(2, (1, -2, 2), (1, 1, -1))
    art = compile_instance(inst)
    pins = skeleton_pins(art)
    for e, label in art.pinned_hints.items():
        assert pins[e] == label
    assert set(pins) <= set(art.graph.edges)


def test_forcing_a_wrong_output_is_unsat():
    # With the truth head pinned T, pinning any truth harvest to a different
    # color must be refutable: the chain carries one color end to end.
    art = compile_instance(inst_of(1))
    truth_pins = {e: lab for e, lab in art.pinned_hints.items() if lab == "T"}
    assert truth_pins
    harvest = max(truth_pins)  # any single pinned edge will do
    adversarial = dict(art.pinned_hints)
    adversarial[harvest] = "F"
    res = solve(art.graph, 5, hints=adversarial, node_budget=500_000)
    assert res.status == "unsat"


# ---------------------------------------------------------------------------
# the two transformations

@given(nae_instances(n_max=3, m_max=3))
def test_template_coloring_is_valid_and_round_trips(inst):
    sat, witness = nae_brute_force(inst)
    if not sat:
        return
    art = compile_instance(inst)
    col = assignment_to_coloring(art, witness)
    assert verify(art.graph, col.coloring, 5).valid
    pins = skeleton_pins(art)
    assert all(col.coloring[e] == lab for e, lab in pins.items())
    back = coloring_to_assignment(art, col.coloring)
    assert back.values == witness


def test_assignment_to_coloring_input_validation():
    art = compile_instance(inst_of(1, (1, 1, -1)))
    with pytest.raises(ValueError, match="length"):
        assignment_to_coloring(art, (True, False))
    bad = compile_instance(inst_of(1, (1, 1, 1)))
    with pytest.raises(ValueError, match="clause 1"):
        assignment_to_coloring(bad, (True,))


def test_coloring_to_assignment_rejects_tampering():
    art = compile_instance(inst_of(1, (1, 1, -1)))
    col = assignment_to_coloring(art, (True,)).coloring

    broken = dict(col)
    e0 = art.graph.edges[0]
    broken[e0] = "3" if broken[e0] != "3" else "2"
    with pytest.raises(ColoringRejected, match="invalid"):
        coloring_to_assignment(art, broken)

    # a global T/F swap stays a valid coloring but breaks the pinned hints
    swapped = {e: {"T": "F", "F": "T"}.get(lab, lab) for e, lab in col.items()}
    assert verify(art.graph, swapped, 5).valid
    with pytest.raises(ColoringRejected, match="pinned hint"):
        coloring_to_assignment(art, swapped)


# ---------------------------------------------------------------------------
# round-trip reports

def test_roundtrip_report_verdicts():
    rep = roundtrip_report(inst_of(1, (1, 1, 1)))
    assert not rep.nae_satisfiable
    assert rep.solve_status == "unsat"
    assert rep.agree
    assert "verdict: AGREE" in rep.as_text()

    rep = roundtrip_report(inst_of(2, (1, -2, -1)))
    assert rep.nae_satisfiable and rep.agree
    assert rep.extraction_ok and rep.identity_ok

    starved = roundtrip_report(inst_of(2, (1, 2, 1)), node_budget=3)
    assert starved.solve_status == "budget"
    assert "verdict: BUDGET" in starved.as_text()


# ---------------------------------------------------------------------------
# provenance

def test_provenance_covers_every_edge_and_round_trips():
    art = compile_instance(inst_of(2, (1, -2, 2)))
    assert set(art.edge_provenance) == set(art.graph.edges)
    names = {gi.name for gi in art.gadget_instances}
    assert all(owner in names for owner in art.edge_provenance.values())
    text = write_provenance(art)
    prov, fusions = parse_provenance(text)
    assert prov == dict(art.edge_provenance)
    assert set(fusions) == set(art.wiring)  # file order is sorted
    for rec in art.wiring:
        assert rec.producer in names and rec.consumer in names
