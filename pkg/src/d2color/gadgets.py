"""Boundary gadgets: structure checks, behavioral certification, synthesis.

A gadget is a small bipartite graph with designated boundary edges (inputs
and outputs) whose free endpoints are pendant vertices.  Certification
replays every boundary scenario exhaustively at five colors, modelling the
surrounding construction with probe edges, and either passes or produces a
concrete counterexample.  Structural defects and behavioral defects are
reported as distinct failure kinds.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, replace
from functools import cached_property
from typing import Iterable, Iterator, Mapping, Sequence

from .coloring import (
    FIVE_PALETTE,
    ConflictRelation,
    conflict_relation,
    enumerate_colorings,
    solve,
)
from .graph import (
    Edge,
    Graph,
    GraphFormatError,
    bipartition,
    build_graph,
    canonical_edge,
    girth,
    iter_directives,
)

ROLES = ("fanout", "variable", "clause")


@dataclass(frozen=True)
class BoundaryEdge:
    """A designated edge whose free endpoint faces the outside world."""

    edge: Edge
    free_end: str

    @property
    def inner_end(self) -> str:
        u, v = self.edge
        return v if self.free_end == u else u


@dataclass(frozen=True)
class Gadget:
    """Graph plus role and boundary designation."""

    graph: Graph
    role: str
    inputs: tuple[BoundaryEdge, ...]
    outputs: tuple[BoundaryEdge, ...]

    @property
    def width(self) -> int:
        return len(self.outputs)

    @property
    def boundary(self) -> tuple[BoundaryEdge, ...]:
        return self.inputs + self.outputs

    @cached_property
    def classes(self) -> dict[str, int] | None:
        """Witness 2-partition of the gadget graph, when bipartite."""
        return bipartition(self.graph).classes


@dataclass(frozen=True)
class CertReport:
    """Result of a certification run.

    ``failure_kind`` distinguishes structural defects (malformed gadget)
    from behavioral ones (a scenario with the wrong outcome).  The
    counterexample is a human-readable description of the first failure.
    """

    role: str
    passed: bool
    scenarios_checked: int
    counterexample: str | None = None
    failure_kind: str | None = None
    details: tuple[str, ...] = ()

    def as_text(self) -> str:
        lines = [f"role {self.role}",
                 f"passed {'yes' if self.passed else 'no'}",
                 f"scenarios {self.scenarios_checked}"]
        if self.failure_kind:
            lines.append(f"failure {self.failure_kind}")
        if self.counterexample:
            lines.append(f"counterexample {self.counterexample}")
        lines.extend(f"detail {d}" for d in self.details)
        return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# file format
#
# Graph v/e lines plus:
#   in <id1> <id2> <free_id>
#   out <id1> <id2> <free_id>
#   role <fanout w | variable | clause>


def parse_gadget(text: str) -> Gadget:
    vertex_lines: list[str] = []
    edge_lines: list[str] = []
    ins: list[tuple[str, str, str]] = []
    outs: list[tuple[str, str, str]] = []
    role: tuple[str, int | None] | None = None
    for lineno, parts in iter_directives(text):
        kind = parts[0]
        if kind == "v" and len(parts) == 2:
            vertex_lines.append(parts[1])
        elif kind == "e" and len(parts) == 3:
            if parts[1] == parts[2]:
                raise GraphFormatError(f"line {lineno}: self-loop at vertex {parts[1]}")
            edge_lines.append((parts[1], parts[2]))
        elif kind in ("in", "out") and len(parts) == 4:
            u, v, free = parts[1], parts[2], parts[3]
            if free not in (u, v):
                raise GraphFormatError(
                    f"line {lineno}: free endpoint {free} is not on edge {u} {v}")
            (ins if kind == "in" else outs).append((u, v, free))
        elif kind == "role":
            if role is not None:
                raise GraphFormatError(f"line {lineno}: duplicate role line")
            if len(parts) == 3 and parts[1] == "fanout":
                try:
                    role = ("fanout", int(parts[2]))
                except ValueError:
                    raise GraphFormatError(
                        f"line {lineno}: bad fanout width {parts[2]!r}") from None
            elif len(parts) == 2 and parts[1] in ("variable", "clause"):
                role = (parts[1], None)
            else:
                raise GraphFormatError(
                    f"line {lineno}: unrecognized role {' '.join(parts[1:])!r}")
        else:
            raise GraphFormatError(
                f"line {lineno}: unrecognized line {' '.join(parts)!r}")
    if role is None:
        raise GraphFormatError("missing role line")
    g = build_graph(edge_lines, vertices=vertex_lines)
    inputs = tuple(BoundaryEdge(canonical_edge(u, v), free) for u, v, free in ins)
    outputs = tuple(BoundaryEdge(canonical_edge(u, v), free) for u, v, free in outs)
    for be in inputs + outputs:
        if be.edge not in g.edge_set:
            raise GraphFormatError(
                f"boundary edge {be.edge[0]} {be.edge[1]} is not in the graph")
    name, w = role
    if name == "fanout" and w != len(outputs):
        raise GraphFormatError(
            f"role says fanout {w} but {len(outputs)} output lines are present")
    return Gadget(graph=g, role=name, inputs=inputs, outputs=outputs)


def write_gadget(gd: Gadget, comments: Sequence[str] = ()) -> str:
    header = [f"# {c}" if c else "#" for c in comments]
    body = sorted([f"v {v}" for v in gd.graph.vertices]
                  + [f"e {u} {v}" for u, v in gd.graph.edges])
    for be in gd.inputs:
        body.append(f"in {be.edge[0]} {be.edge[1]} {be.free_end}")
    for be in gd.outputs:
        body.append(f"out {be.edge[0]} {be.edge[1]} {be.free_end}")
    if gd.role == "fanout":
        body.append(f"role fanout {gd.width}")
    else:
        body.append(f"role {gd.role}")
    return "\n".join(header + body) + "\n"


# ---------------------------------------------------------------------------
# structural invariants


def structural_problems(gd: Gadget) -> list[str]:
    """All structural defects, empty when the gadget is well formed.

    Checks: role is known, boundary edges are pendant (free endpoint of
    degree exactly 1), no edge serves as both input and output, the graph
    is connected and bipartite with maximum degree 3, and every internal
    cycle has length at least 6.  Boundary counts must match the role:
    fanouts take at least one input and one output, variables exactly two
    inputs, two outputs and three internal edges, clauses exactly three
    inputs and no outputs.
    """
    problems: list[str] = []
    g = gd.graph
    if gd.role not in ROLES:
        problems.append(f"unknown role {gd.role!r}")
    seen: set[Edge] = set()
    for be in gd.boundary:
        if be.edge in seen:
            problems.append(
                f"edge {be.edge[0]} {be.edge[1]} carries two boundary designations")
        seen.add(be.edge)
    in_set = {be.edge for be in gd.inputs}
    for be in gd.outputs:
        if be.edge in in_set:
            problems.append(
                f"edge {be.edge[0]} {be.edge[1]} is declared both input and output")
    for be in gd.boundary:
        deg = g.degree(be.free_end)
        if deg != 1:
            problems.append(
                f"free endpoint {be.free_end} of boundary edge "
                f"{be.edge[0]} {be.edge[1]} has degree {deg}, expected 1")
    if g.vertices and not _connected(g):
        problems.append("gadget graph is not connected")
    if bipartition(g).classes is None:
        problems.append("gadget graph is not bipartite")
    if g.max_degree > 3:
        problems.append(f"maximum degree {g.max_degree} exceeds 3")
    gth = girth(g)
    if gth is not None and gth < 6:
        problems.append(f"internal cycle of length {gth} (minimum allowed is 6)")
    if gd.role == "fanout":
        if not gd.inputs:
            problems.append("fanout needs at least one input")
        if not gd.outputs:
            problems.append("fanout needs at least one output")
    elif gd.role == "variable":
        if len(gd.inputs) != 2 or len(gd.outputs) != 2:
            problems.append(
                f"variable needs 2 inputs and 2 outputs, has "
                f"{len(gd.inputs)} and {len(gd.outputs)}")
        internal = len(g.edges) - len(gd.boundary)
        if internal != 3:
            problems.append(f"variable needs exactly 3 internal edges, has {internal}")
    elif gd.role == "clause":
        if len(gd.inputs) != 3 or len(gd.outputs) != 0:
            problems.append(
                f"clause needs 3 inputs and 0 outputs, has "
                f"{len(gd.inputs)} and {len(gd.outputs)}")
    return problems


def _connected(g: Graph) -> bool:
    if not g.vertices:
        return True
    seen = {g.vertices[0]}
    stack = [g.vertices[0]]
    while stack:
        u = stack.pop()
        for w in g.adjacency[u]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == len(g.vertices)


# ---------------------------------------------------------------------------
# probes
#
# An environment probe at a boundary edge is a pair of stub edges attached
# to its free endpoint and precolored with two distinct labels different
# from the boundary edge's color.  This is how the certifier simulates the
# neighboring gadget's edges within conflict distance.


def _stub_edges(free: str, vertices: Iterable[str]) -> tuple[Edge, Edge]:
    taken = set(vertices)
    names = []
    suffix = 1
    while len(names) < 2:
        cand = f"{free}~{suffix}"
        if cand not in taken:
            names.append(cand)
        suffix += 1
    return canonical_edge(free, names[0]), canonical_edge(free, names[1])


def decorated_graph(g: Graph, targets: Sequence[BoundaryEdge]
                    ) -> tuple[Graph, dict[Edge, tuple[Edge, Edge]]]:
    """Attach probe stubs at each target's free endpoint.

    Returns the enlarged graph and, per target edge, its stub pair.
    """
    extra: list[Edge] = []
    stubs: dict[Edge, tuple[Edge, Edge]] = {}
    vertices = set(g.vertices)
    for be in targets:
        s1, s2 = _stub_edges(be.free_end, vertices)
        vertices.update({s1[0], s1[1], s2[0], s2[1]})
        extra.extend((s1, s2))
        stubs[be.edge] = (s1, s2)
    return build_graph(list(g.edges) + extra, vertices=vertices), stubs


def _pins_consistent(rel: ConflictRelation, pins: Mapping[Edge, str]) -> bool:
    items = sorted(pins.items())
    for i, (e, lab) in enumerate(items):
        for f, lab2 in items[i + 1:]:
            if lab == lab2 and rel.conflicts(e, f):
                return False
    return True


def _label_pairs(excluded: str) -> list[tuple[str, str]]:
    rest = [c for c in FIVE_PALETTE if c != excluded]
    return list(itertools.combinations(rest, 2))


def _show(coloring: Mapping[Edge, str]) -> str:
    return " ".join(f"{u}-{v}={lab}" for (u, v), lab in sorted(coloring.items()))


# ---------------------------------------------------------------------------
# certification


def certify_fanout(gd: Gadget) -> CertReport:
    """Certify the equal-color contract of a fanout gadget.

    Soundness: every valid 5-coloring of the bare gadget gives all boundary
    edges one common color.  The sweep enumerates all colorings, no
    sampling.  Extendibility: for each color c and each output edge probed
    independently with every pair of distinct labels other than c, some
    valid coloring has the whole boundary at c.  Probe decorations that
    already clash with the pinned boundary are vacuous and skipped.
    """
    problems = structural_problems(gd)
    if problems or gd.role != "fanout":
        if gd.role != "fanout":
            problems.insert(0, f"certify_fanout on role {gd.role!r}")
        return CertReport(role=gd.role, passed=False, scenarios_checked=0,
                          counterexample=problems[0], failure_kind="structural",
                          details=tuple(problems))
    boundary = [be.edge for be in gd.boundary]
    total = 0
    swept = 0
    for col in enumerate_colorings(gd.graph, 5):
        swept += 1
        if len({col[e] for e in boundary}) > 1:
            return CertReport(
                role="fanout", passed=False, scenarios_checked=1,
                failure_kind="behavioral",
                counterexample=f"soundness: boundary edges differ in {_show(col)}",
                details=(f"colorings enumerated before failure: {swept}",))
    total += 1
    if swept == 0:
        return CertReport(
            role="fanout", passed=False, scenarios_checked=total,
            failure_kind="behavioral",
            counterexample="gadget admits no valid coloring at all")
    vacuous = 0
    checked = 0
    for out in gd.outputs:
        dg, stubs = decorated_graph(gd.graph, [out])
        rel = conflict_relation(dg)
        s1, s2 = stubs[out.edge]
        for c in FIVE_PALETTE:
            base = {e: c for e in boundary}
            if not _pins_consistent(rel, base):
                # conflicting boundary edges can never agree on a color,
                # which contradicts the fanout contract outright
                return CertReport(
                    role="fanout", passed=False, scenarios_checked=total + 1,
                    failure_kind="behavioral",
                    counterexample=(
                        f"boundary edges conflict, uniform color {c} "
                        f"is unrealizable"))
            for d1, d2 in _label_pairs(c):
                total += 1
                pins = dict(base)
                pins[s1] = d1
                pins[s2] = d2
                if not _pins_consistent(rel, pins):
                    vacuous += 1
                    continue
                res = solve(dg, 5, hints=pins)
                checked += 1
                if not res.is_sat:
                    return CertReport(
                        role="fanout", passed=False, scenarios_checked=total,
                        failure_kind="behavioral",
                        counterexample=(
                            f"extendibility: no coloring with boundary {c} and "
                            f"probe {d1},{d2} at output "
                            f"{out.edge[0]} {out.edge[1]}"))
    return CertReport(
        role="fanout", passed=True, scenarios_checked=total,
        details=(f"soundness sweep: {swept} colorings, boundary uniform in all",
                 f"extendibility: {checked} scenarios solved, {vacuous} vacuous"))


def certify_variable(gd: Gadget) -> CertReport:
    """Certify the two-input, two-output value gadget.

    With the inputs pinned T and F (probed with every admissible pair of
    stub labels at each input), every valid coloring must put exactly
    {T, F} on the two outputs.  Both output orders must be achievable, and
    each order must extend against every probe decoration placed at either
    output independently.  Equal pinned inputs must admit no coloring.
    """
    problems = structural_problems(gd)
    if problems or gd.role != "variable":
        if gd.role != "variable":
            problems.insert(0, f"certify_variable on role {gd.role!r}")
        return CertReport(role=gd.role, passed=False, scenarios_checked=0,
                          counterexample=problems[0], failure_kind="structural",
                          details=tuple(problems))
    i1, i2 = gd.inputs
    o1, o2 = gd.outputs
    total = 0

    def outputs_ok(col: Mapping[Edge, str]) -> bool:
        return {col[o1.edge], col[o2.edge]} == {"T", "F"}

    # bare soundness sweep, strongest form: no probes at all
    total += 1
    bare_count = 0
    for col in enumerate_colorings(gd.graph, 5, pins={i1.edge: "T", i2.edge: "F"}):
        bare_count += 1
        if not outputs_ok(col):
            return CertReport(
                role="variable", passed=False, scenarios_checked=total,
                failure_kind="behavioral",
                counterexample=f"soundness: outputs not {{T,F}} in {_show(col)}")
    if bare_count == 0:
        return CertReport(
            role="variable", passed=False, scenarios_checked=total,
            failure_kind="behavioral",
            counterexample="no valid coloring exists with inputs T,F at all")

    # probed soundness: both inputs decorated, all admissible combinations
    dg_in, stubs_in = decorated_graph(gd.graph, [i1, i2])
    rel_in = conflict_relation(dg_in)
    a1, a2 = stubs_in[i1.edge]
    b1, b2 = stubs_in[i2.edge]
    vacuous = 0
    for d1, d2 in _label_pairs("T"):
        for e1, e2 in _label_pairs("F"):
            total += 1
            pins = {i1.edge: "T", i2.edge: "F",
                    a1: d1, a2: d2, b1: e1, b2: e2}
            if not _pins_consistent(rel_in, pins):
                vacuous += 1
                continue
            for col in enumerate_colorings(dg_in, 5, pins=pins):
                if not outputs_ok(col):
                    return CertReport(
                        role="variable", passed=False, scenarios_checked=total,
                        failure_kind="behavioral",
                        counterexample=(
                            f"soundness under probes {d1},{d2}/{e1},{e2}: "
                            f"outputs not {{T,F}} in {_show(col)}"))

    # equal inputs must be impossible
    for lab in ("T", "F"):
        total += 1
        clash = next(iter(enumerate_colorings(
            gd.graph, 5, pins={i1.edge: lab, i2.edge: lab})), None)
        if clash is not None:
            return CertReport(
                role="variable", passed=False, scenarios_checked=total,
                failure_kind="behavioral",
                counterexample=(
                    f"inputs pinned {lab},{lab} admit a coloring: {_show(clash)}"))

    # completeness: each order achievable and extendible per probed output
    checked = 0
    for first, second in (("T", "F"), ("F", "T")):
        base_pins = {i1.edge: "T", i2.edge: "F",
                     o1.edge: first, o2.edge: second}
        for target in (o1, o2):
            dg_out, stubs_out = decorated_graph(gd.graph, [target])
            rel_out = conflict_relation(dg_out)
            s1, s2 = stubs_out[target.edge]
            if not _pins_consistent(rel_out, base_pins):
                return CertReport(
                    role="variable", passed=False, scenarios_checked=total + 1,
                    failure_kind="behavioral",
                    counterexample=(
                        f"output order ({first},{second}) is unrealizable, "
                        f"the pinned edges already conflict"))
            own = base_pins[target.edge]
            for d1, d2 in _label_pairs(own):
                total += 1
                pins = dict(base_pins)
                pins[s1] = d1
                pins[s2] = d2
                if not _pins_consistent(rel_out, pins):
                    vacuous += 1
                    continue
                res = solve(dg_out, 5, hints=pins)
                checked += 1
                if not res.is_sat:
                    return CertReport(
                        role="variable", passed=False, scenarios_checked=total,
                        failure_kind="behavioral",
                        counterexample=(
                            f"completeness: order ({first},{second}) does not "
                            f"extend against probe {d1},{d2} at output "
                            f"{target.edge[0]} {target.edge[1]}"))
    return CertReport(
        role="variable", passed=True, scenarios_checked=total,
        details=(f"bare soundness sweep: {bare_count} colorings",
                 f"completeness: {checked} scenarios solved, {vacuous} vacuous",))


def certify_clause(gd: Gadget) -> CertReport:
    """Certify the not-all-equal contract of a clause gadget.

    For every input scenario over {T,F}^3: when all three agree, the bare
    pinned gadget must admit no coloring at all (which covers every probe
    decoration, since dropping probe edges only removes constraints); when
    they disagree, a coloring must exist for every probe decoration of the
    three inputs simultaneously.
    """
    problems = structural_problems(gd)
    if problems or gd.role != "clause":
        if gd.role != "clause":
            problems.insert(0, f"certify_clause on role {gd.role!r}")
        return CertReport(role=gd.role, passed=False, scenarios_checked=0,
                          counterexample=problems[0], failure_kind="structural",
                          details=tuple(problems))
    ins = gd.inputs
    dg, stubs = decorated_graph(gd.graph, list(ins))
    rel = conflict_relation(dg)
    total = 0
    solved = 0
    vacuous = 0
    for scenario in itertools.product("TF", repeat=3):
        total += 1
        base = {ins[j].edge: scenario[j] for j in range(3)}
        if len(set(scenario)) == 1:
            col = next(iter(enumerate_colorings(gd.graph, 5, pins=base)), None)
            if col is not None:
                return CertReport(
                    role="clause", passed=False, scenarios_checked=total,
                    failure_kind="behavioral",
                    counterexample=(
                        f"all-equal scenario {','.join(scenario)} admits "
                        f"a coloring: {_show(col)}"))
            second = solve(gd.graph, 5, hints=base)
            if second.status != "unsat":
                return CertReport(
                    role="clause", passed=False, scenarios_checked=total,
                    failure_kind="behavioral",
                    counterexample=(
                        f"refutation disagreement on {','.join(scenario)}"))
            continue
        if not _pins_consistent(rel, base):
            return CertReport(
                role="clause", passed=False, scenarios_checked=total,
                failure_kind="behavioral",
                counterexample=(
                    f"scenario {','.join(scenario)} is unrealizable, the "
                    f"input edges conflict with each other"))
        pair_sets = [_label_pairs(scenario[j]) for j in range(3)]
        for combo in itertools.product(*pair_sets):
            pins = dict(base)
            for j in range(3):
                s1, s2 = stubs[ins[j].edge]
                pins[s1], pins[s2] = combo[j]
            if not _pins_consistent(rel, pins):
                vacuous += 1
                continue
            res = solve(dg, 5, hints=pins)
            solved += 1
            if not res.is_sat:
                deco = " / ".join(",".join(p) for p in combo)
                return CertReport(
                    role="clause", passed=False, scenarios_checked=total,
                    failure_kind="behavioral",
                    counterexample=(
                        f"scenario {','.join(scenario)} with probes {deco} "
                        f"admits no coloring"))
    return CertReport(
        role="clause", passed=True, scenarios_checked=total,
        details=(f"existence checks: {solved} solved, {vacuous} vacuous",
                 "all-equal scenarios refuted exhaustively on the bare gadget"))


def certify(gd: Gadget) -> CertReport:
    """Dispatch to the certifier matching the gadget's role."""
    if gd.role == "fanout":
        return certify_fanout(gd)
    if gd.role == "variable":
        return certify_variable(gd)
    if gd.role == "clause":
        return certify_clause(gd)
    return CertReport(role=gd.role, passed=False, scenarios_checked=0,
                      counterexample=f"unknown role {gd.role!r}",
                      failure_kind="structural")


# ---------------------------------------------------------------------------
# the shipped designs


def sun_graph(prefix: str = "") -> Graph:
    """Hexagon c0..c5 with one pendant pj hanging off every cj."""
    edges = []
    for j in range(6):
        edges.append((f"{prefix}c{j}", f"{prefix}c{(j + 1) % 6}"))
        edges.append((f"{prefix}c{j}", f"{prefix}p{j}"))
    return build_graph(edges)


def sun_fanout(parity: str = "even", prefix: str = "") -> Gadget:
    """Width-2 fanout on the pendant sun.

    The even designation takes its input at pendant 0 and outputs at
    pendants 2 and 4; the odd designation is the same thing rotated one
    step.  Both certify; the two orientations exist so chained copies can
    alternate and keep every fused free endpoint pair in opposite
    bipartition classes.
    """
    g = sun_graph(prefix)
    base = 0 if parity == "even" else 1
    mk = lambda j: BoundaryEdge(canonical_edge(f"{prefix}c{j}", f"{prefix}p{j}"),
                                f"{prefix}p{j}")
    return Gadget(graph=g, role="fanout",
                  inputs=(mk(base),),
                  outputs=(mk(base + 2), mk(base + 4)))


def variable_gadget() -> Gadget:
    """Star of three arms: inputs share one arm, outputs share another.

    Pinning the inputs to two different colors forces the three hub edges
    onto the remaining three colors, which in turn forces the outputs onto
    the input colors as a set.
    """
    edges = [("h", "a"), ("h", "b"), ("h", "c"),
             ("a", "p"), ("a", "q"), ("b", "r"), ("b", "s")]
    g = build_graph(edges)
    return Gadget(
        graph=g, role="variable",
        inputs=(BoundaryEdge(canonical_edge("a", "p"), "p"),
                BoundaryEdge(canonical_edge("a", "q"), "q")),
        outputs=(BoundaryEdge(canonical_edge("b", "r"), "r"),
                 BoundaryEdge(canonical_edge("b", "s"), "s")))


def clause_gadget() -> Gadget:
    """Hexagon with pendants at odd positions and three-edge legs at even.

    Each leg runs cycle vertex, then a degree-3 joint with its own pendant,
    then a degree-2 wrist, then the boundary input.  The legs' allowed
    input colors pairwise intersect but have empty triple intersection,
    which is exactly the not-all-equal behavior.
    """
    edges = []
    for j in range(6):
        edges.append((f"v{j}", f"v{(j + 1) % 6}"))
    for j in (1, 3, 5):
        edges.append((f"v{j}", f"u{j}"))
    ins = []
    for j in (0, 2, 4):
        edges.extend([(f"v{j}", f"a{j}"), (f"a{j}", f"q{j}"),
                      (f"a{j}", f"b{j}"), (f"b{j}", f"y{j}")])
        ins.append(BoundaryEdge(canonical_edge(f"b{j}", f"y{j}"), f"y{j}"))
    return Gadget(graph=build_graph(edges), role="clause",
                  inputs=tuple(ins), outputs=())


# ---------------------------------------------------------------------------
# composition


def prefixed(gd: Gadget, prefix: str) -> Gadget:
    """Relabel every vertex with a prefix; designation follows along."""
    g = build_graph([(prefix + u, prefix + v) for u, v in gd.graph.edges],
                    vertices=[prefix + v for v in gd.graph.vertices])
    ren = lambda be: BoundaryEdge(
        canonical_edge(prefix + be.edge[0], prefix + be.edge[1]),
        prefix + be.free_end)
    return Gadget(graph=g, role=gd.role,
                  inputs=tuple(ren(be) for be in gd.inputs),
                  outputs=tuple(ren(be) for be in gd.outputs))


def fuse(producer: Gadget, out_index: int, consumer: Gadget,
         in_index: int) -> Gadget:
    """Merge an output edge with an input edge into one through edge.

    The output (a, b) with free b and the input (c, d) with free c become
    the single edge (a, d); b and c disappear.  Vertex names must already
    be disjoint, use :func:`prefixed` to arrange that.
    """
    out = producer.outputs[out_index]
    inp = consumer.inputs[in_index]
    overlap = set(producer.graph.vertices) & set(consumer.graph.vertices)
    if overlap:
        raise ValueError(f"vertex name collision on fuse: {sorted(overlap)[:3]}")
    merged = canonical_edge(out.inner_end, inp.inner_end)
    edges = [e for e in producer.graph.edges if e != out.edge]
    edges += [e for e in consumer.graph.edges if e != inp.edge]
    edges.append(merged)
    outputs = tuple(be for i, be in enumerate(producer.outputs) if i != out_index)
    outputs += consumer.outputs
    inputs = producer.inputs + tuple(
        be for i, be in enumerate(consumer.inputs) if i != in_index)
    return Gadget(graph=build_graph(edges), role=producer.role,
                  inputs=inputs, outputs=outputs)


def fanout_of_width(base: Gadget, w: int) -> Gadget:
    """Build a width-w fanout from a certified base fanout.

    Matching width returns the base unchanged.  Smaller widths narrow the
    designation to the first w outputs.  Larger widths chain copies,
    fusing the last output of the running composite into the next copy's
    input.
    """
    if w < 1:
        raise ValueError(f"fanout width must be positive, got {w}")
    if base.role != "fanout":
        raise ValueError(f"fanout_of_width on role {base.role!r}")
    if not base.outputs:
        raise ValueError("base fanout has no outputs")
    if w == base.width:
        return base
    if w < base.width:
        return replace(base, outputs=base.outputs[:w])
    per_copy = base.width - 1
    if per_copy == 0:
        raise ValueError("cannot widen a width-1 base by chaining")
    copies = 1
    composite = prefixed(base, "u1.")
    while composite.width < w:
        copies += 1
        nxt = prefixed(base, f"u{copies}.")
        composite = fuse(composite, composite.width - 1, nxt, 0)
    if composite.width > w:
        composite = replace(composite, outputs=composite.outputs[:w])
    return composite


# ---------------------------------------------------------------------------
# synthesis


GENERAL_VERTEX_GUARD = 7
GENERAL_EDGE_GUARD = 8
ATTACHMENT_EDGE_MAX = 4


def _attachment_shapes() -> list[tuple]:
    """Rooted attachment shapes hanging off one cycle vertex.

    A shape is the subtree below the cycle vertex's single extra child:
    a (possibly empty) sorted tuple of child shapes.  Depth at most 3 from
    the cycle vertex, at most 4 edges, inner degrees at most 3.  The list
    is sorted by (edge count, shape), so enumeration order is fixed.
    """

    def grow(depth_left: int, budget: int) -> list[tuple]:
        shapes = [()]
        if depth_left == 0 or budget == 0:
            return shapes
        kids = grow(depth_left - 1, budget - 1)
        for k1 in kids:
            if 1 + _shape_edges(k1) <= budget:
                shapes.append((k1,))
        for k1, k2 in itertools.combinations_with_replacement(kids, 2):
            cost = 2 + _shape_edges(k1) + _shape_edges(k2)
            if cost <= budget:
                shapes.append(tuple(sorted((k1, k2))))
        return sorted(set(shapes))

    out = {None}
    for shape in grow(2, ATTACHMENT_EDGE_MAX - 1):
        out.add(shape)
    ordered = sorted((s for s in out if s is not None),
                     key=lambda s: (_shape_edges(s) + 1, s))
    return [None] + ordered  # type: ignore[list-item]


def _shape_edges(shape: tuple) -> int:
    return len(shape) + sum(_shape_edges(k) for k in shape)


def _attach(edges: list[tuple[str, str]], root: str, shape: tuple,
            prefix: str) -> None:
    for i, child in enumerate(shape):
        node = f"{prefix}{i}"
        edges.append((root, node))
        _attach(edges, node, child, node + "_")


def _hexagon_candidates(max_vertices: int, max_edges: int) -> Iterator[Graph]:
    catalog = _attachment_shapes()
    n = len(catalog)
    for combo in itertools.product(range(n), repeat=6):
        variants = []
        for r in range(6):
            rot = combo[r:] + combo[:r]
            variants.append(rot)
            variants.append(rot[::-1])
        if min(variants) != combo:
            continue  # a symmetric twin was or will be produced
        extra = sum(_shape_edges(catalog[i]) + 1 if catalog[i] is not None else 0
                    for i in combo)
        if 6 + extra > max_edges or 6 + extra > max_vertices:
            continue
        edges = [(f"g{j}", f"g{(j + 1) % 6}") for j in range(6)]
        for j, idx in enumerate(combo):
            shape = catalog[idx]
            if shape is None:
                continue
            child = f"g{j}t"
            edges.append((f"g{j}", child))
            _attach(edges, child, shape, child + "_")
        yield build_graph(edges)


def _tree_candidates(max_vertices: int, max_edges: int) -> Iterator[Graph]:
    import networkx as nx

    for nv in range(2, max_vertices + 1):
        if nv - 1 > max_edges:
            break
        for t in nx.nonisomorphic_trees(nv):
            yield build_graph((f"n{u}", f"n{v}") for u, v in sorted(t.edges()))


def _general_candidates(max_vertices: int, max_edges: int) -> Iterator[Graph]:
    import networkx as nx

    if max_vertices > GENERAL_VERTEX_GUARD or max_edges > GENERAL_EDGE_GUARD:
        raise ValueError(
            "general enumeration is guarded to "
            f"{GENERAL_VERTEX_GUARD} vertices / {GENERAL_EDGE_GUARD} edges; "
            "use the trees or hexagon family for larger bounds")
    for t in nx.graph_atlas_g():
        nv, ne = t.number_of_nodes(), t.number_of_edges()
        if ne < 1 or nv > max_vertices or ne > max_edges:
            continue
        if not nx.is_connected(t):
            continue
        yield build_graph((f"n{u}", f"n{v}") for u, v in sorted(t.edges()))


def _eligible_boundary(g: Graph) -> list[BoundaryEdge]:
    out = []
    for u, v in g.edges:
        if g.degree(u) == 1:
            out.append(BoundaryEdge((u, v), u))
        if g.degree(v) == 1:
            out.append(BoundaryEdge((u, v), v))
    return out


def _designations(g: Graph, role: str, fanout_width: int
                  ) -> Iterator[tuple[tuple[BoundaryEdge, ...], tuple[BoundaryEdge, ...]]]:
    elig = _eligible_boundary(g)
    if role == "fanout":
        take_in, take_out = 1, fanout_width
    elif role == "variable":
        take_in, take_out = 2, 2
    else:
        take_in, take_out = 3, 0
    for ins in itertools.combinations(elig, take_in):
        used = {be.edge for be in ins}
        if len(used) < len(ins):
            continue
        rest = [be for be in elig if be.edge not in used]
        if take_out == 0:
            yield tuple(ins), ()
            continue
        for outs in itertools.combinations(rest, take_out):
            if len({be.edge for be in outs}) < len(outs):
                continue
            yield tuple(ins), tuple(outs)


def synthesize_gadget(role: str, max_vertices: int, max_edges: int,
                      budget_seconds: float | None = None,
                      family: str = "auto",
                      fanout_width: int = 2) -> Gadget | None:
    """Search for a certified gadget by exhaustive enumeration.

    Candidate graphs come from a family: "general" walks every connected
    graph up to isomorphism within small guarded bounds, "trees" walks
    nonisomorphic trees, and "hexagon" walks a six-cycle with one rooted
    attachment per cycle vertex (deduplicated under the dihedral
    symmetry).  "auto" picks general for small bounds, trees for the
    variable role, hexagon otherwise.  Within a candidate, every boundary
    designation admissible for the role is tried in a fixed order and the
    first one passing certification wins, so results are deterministic for
    fixed bounds.  Returns None when the space is exhausted or the time
    budget runs out: not found is an ordinary outcome, not an error.
    """
    if role not in ROLES:
        raise ValueError(f"unknown role {role!r}")
    if family == "auto":
        if max_edges <= 6:
            family = "general"
        elif role == "variable":
            family = "trees"
        else:
            family = "hexagon"
    if family == "general":
        candidates = _general_candidates(max_vertices, max_edges)
    elif family == "trees":
        candidates = _tree_candidates(max_vertices, max_edges)
    elif family == "hexagon":
        candidates = _hexagon_candidates(max_vertices, max_edges)
    else:
        raise ValueError(f"unknown family {family!r}")
    deadline = None if budget_seconds is None else time.monotonic() + budget_seconds
    for g in candidates:
        if deadline is not None and time.monotonic() > deadline:
            return None
        if len(g.vertices) > max_vertices or len(g.edges) > max_edges:
            continue
        for ins, outs in _designations(g, role, fanout_width):
            cand = Gadget(graph=g, role=role, inputs=ins, outputs=outs)
            if structural_problems(cand):
                continue
            if certify(cand).passed:
                return cand
            if deadline is not None and time.monotonic() > deadline:
                return None
    return None
