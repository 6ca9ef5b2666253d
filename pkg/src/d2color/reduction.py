"""Not-all-equal 3SAT instances and their compilation to coloring instances.

The compiler builds, for an instance with n variables and m clauses, a
bipartite maximum-degree-3 graph whose valid 5-colorings with a handful of
pinned edges correspond exactly to NAE-satisfying assignments.  The layout:

  * one truth chain and one falsehood chain, each a width-n fanout made of
    2n-1 pendant-hexagon suns fused head to tail,
  * one variable gadget per variable, its two inputs fed by the chains,
  * per variable and polarity one literal fanout chain (2w suns for w
    occurrences, a single capped sun when the polarity never occurs),
  * one clause gadget per clause, its three inputs fed by literal chains.

Chained suns alternate between the even designation (boundary pendants at
positions 0, 2, 4) and the odd one (1, 3, 5).  The alternation keeps each
fused pendant pair in opposite halves of the global bipartition, so the
whole graph stays bipartite no matter how the wiring closes cycles.
Boundary edges that feed nothing are either narrowed away (trailing chain
links) or terminated by a two-stub cap (chain heads and never-occurring
polarities), so every surviving boundary edge is fused exactly once.

A single layout pass computes every global vertex name, fusion, and cap.
Both the compiler and the linear-time assignment-to-coloring stitcher walk
that one plan, which keeps the graph and the color templates aligned by
construction.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .coloring import FIVE_PALETTE, solve, verify
from .graph import Edge, Graph, build_graph, canonical_edge

PALETTE_INDEX = {lab: i for i, lab in enumerate(FIVE_PALETTE)}


class NaeFormatError(ValueError):
    """Parse failure with 1-based line and column of the offending token."""

    def __init__(self, line: int, column: int, message: str):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


@dataclass(frozen=True)
class Literal:
    """One literal: a variable index (1-based) and its polarity."""

    var: int
    positive: bool

    def value_under(self, values: Sequence[bool]) -> bool:
        return values[self.var - 1] == self.positive


Clause = tuple[Literal, Literal, Literal]


@dataclass(frozen=True)
class NaeInstance:
    num_vars: int
    clauses: tuple[Clause, ...]

    def __post_init__(self):
        # accept any iterable-of-triples; equality needs one canonical shape
        object.__setattr__(self, "clauses",
                           tuple(tuple(cl) for cl in self.clauses))

    @property
    def num_clauses(self) -> int:
        return len(self.clauses)


def parse_nae(text: str) -> NaeInstance:
    """Parse the clause-list format.

    Header ``p nae <n> <m>``, then exactly m lines of three nonzero
    integers terminated by 0 (negative means negated).  Lines starting
    with ``c`` are comments.  Errors carry line and column.
    """
    header: tuple[int, int] | None = None
    clauses: list[Clause] = []
    last_line = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        last_line = lineno
        tokens = [(m.start() + 1, m.group()) for m in re.finditer(r"\S+", raw)]
        if not tokens or tokens[0][1] == "c":
            continue
        if header is None:
            if (len(tokens) != 4 or tokens[0][1] != "p" or tokens[1][1] != "nae"):
                raise NaeFormatError(lineno, tokens[0][0],
                                     "bad header, expected 'p nae <n> <m>'")
            try:
                n = int(tokens[2][1])
                m = int(tokens[3][1])
            except ValueError:
                raise NaeFormatError(lineno, tokens[2][0],
                                     "bad header, counts must be integers") from None
            if n < 0 or m < 0:
                raise NaeFormatError(lineno, tokens[2][0],
                                     "bad header, counts must be nonnegative")
            header = (n, m)
            continue
        n, m = header
        if len(clauses) >= m:
            raise NaeFormatError(lineno, tokens[0][0],
                                 f"expected {m} clause lines, found more")
        lits: list[Literal] = []
        terminated = False
        for col, tok in tokens:
            try:
                val = int(tok)
            except ValueError:
                raise NaeFormatError(lineno, col,
                                     f"expected an integer, got {tok!r}") from None
            if terminated:
                raise NaeFormatError(lineno, col, "content after terminating 0")
            if val == 0:
                terminated = True
                continue
            if abs(val) > n:
                raise NaeFormatError(
                    lineno, col,
                    f"literal {val} out of range for {n} variables")
            lits.append(Literal(abs(val), val > 0))
        if not terminated:
            raise NaeFormatError(lineno, tokens[-1][0], "missing terminating 0")
        if len(lits) != 3:
            raise NaeFormatError(lineno, tokens[0][0],
                                 f"clause {len(clauses) + 1} has {len(lits)} literals")
        clauses.append((lits[0], lits[1], lits[2]))
    if header is None:
        raise NaeFormatError(max(last_line, 1), 1,
                             "bad header, expected 'p nae <n> <m>'")
    n, m = header
    if len(clauses) != m:
        raise NaeFormatError(max(last_line, 1), 1,
                             f"expected {m} clause lines, found {len(clauses)}")
    return NaeInstance(num_vars=n, clauses=tuple(clauses))


def write_nae(inst: NaeInstance, comments: Sequence[str] = ()) -> str:
    lines = [f"c {c}" if c else "c" for c in comments]
    lines.append(f"p nae {inst.num_vars} {inst.num_clauses}")
    for cl in inst.clauses:
        lines.append(" ".join(str(l.var if l.positive else -l.var) for l in cl)
                     + " 0")
    return "\n".join(lines) + "\n"


def check_nae(inst: NaeInstance, values: Sequence[bool]
              ) -> tuple[bool, int | None]:
    """True when every clause sees both a true and a false literal.

    Returns the 1-based index of the first violated clause otherwise.
    """
    if len(values) != inst.num_vars:
        raise ValueError(f"assignment length {len(values)} does not match "
                         f"{inst.num_vars} variables")
    for idx, cl in enumerate(inst.clauses, start=1):
        seen = {lit.value_under(values) for lit in cl}
        if len(seen) < 2:
            return False, idx
    return True, None


def nae_brute_force(inst: NaeInstance, var_guard: int = 24
                    ) -> tuple[bool, tuple[bool, ...] | None]:
    """Exhaustive scan of all assignments, first witness in lex order."""
    if inst.num_vars > var_guard:
        raise ValueError(f"{inst.num_vars} variables exceed the brute-force "
                         f"guard of {var_guard}")
    for values in itertools.product((False, True), repeat=inst.num_vars):
        ok, _ = check_nae(inst, values)
        if ok:
            return True, values
    return False, None


# ---------------------------------------------------------------------------
# layout
#
# Sun-local names: cycle vertices c0..c5, pendant vertices p0..p5, pendant
# edge j = (cj, pj).  A chain sun s (1-based) lives at global prefix
# "<owner>:s<s>." and uses the even designation when s is odd, the odd
# designation when s is even.  Even-designation suns take input at pendant
# 0 and emit at pendants 2 and 4; odd-designation suns take input at 1 and
# emit at 3 and 5.

PLAIN, FUSED, CAP = "plain", "fused", "cap"


@dataclass(frozen=True)
class _Slot:
    kind: str
    edge: Edge
    stubs: tuple[Edge, Edge] | None = None


@dataclass(frozen=True)
class _SunPlan:
    prefix: str
    parity: int  # 0: designated pendants at even positions, 1: at odd
    pendants: tuple[_Slot, ...]

    def cycle_edge(self, j: int) -> Edge:
        return canonical_edge(f"{self.prefix}c{j}", f"{self.prefix}c{(j + 1) % 6}")


@dataclass(frozen=True)
class _ChainPlan:
    name: str
    kind: str  # "truth" | "false" | "pos" | "neg"
    var: int | None
    suns: tuple[_SunPlan, ...]


@dataclass(frozen=True)
class _VarPlan:
    name: str
    index: int
    m1: Edge
    m2: Edge
    m3: Edge
    i1: Edge
    i2: Edge
    o1: Edge
    o2: Edge


@dataclass(frozen=True)
class _LegPlan:
    arm: Edge      # cycle vertex to joint
    pend: Edge     # joint's own pendant
    wrist: Edge    # joint to wrist vertex
    inp: Edge      # fused input edge


@dataclass(frozen=True)
class _ClausePlan:
    name: str
    index: int
    prefix: str
    legs: tuple[_LegPlan, _LegPlan, _LegPlan]

    def cycle_edge(self, j: int) -> Edge:
        return canonical_edge(f"{self.prefix}v{j}", f"{self.prefix}v{(j + 1) % 6}")

    def pendant_edge(self, j: int) -> Edge:
        return canonical_edge(f"{self.prefix}v{j}", f"{self.prefix}u{j}")


@dataclass(frozen=True)
class GadgetInstance:
    name: str
    role: str
    width: int | None
    placement: Mapping[str, str]


@dataclass(frozen=True)
class FusionRecord:
    producer: str
    out_index: int
    consumer: str
    in_index: int


@dataclass(frozen=True)
class _Layout:
    chains: tuple[_ChainPlan, ...]
    variables: tuple[_VarPlan, ...]
    clauses: tuple[_ClausePlan, ...]
    merged_owners: tuple[tuple[Edge, str], ...]
    wiring: tuple[FusionRecord, ...]
    pinned: dict[Edge, str]
    instances: tuple[GadgetInstance, ...]
    zero_width_pairs: int


def _occurrences(inst: NaeInstance) -> dict[tuple[int, bool], list[tuple[int, int]]]:
    occ: dict[tuple[int, bool], list[tuple[int, int]]] = {}
    for i in range(1, inst.num_vars + 1):
        occ[(i, True)] = []
        occ[(i, False)] = []
    for jc, cl in enumerate(inst.clauses):
        for slot, lit in enumerate(cl):
            occ[(lit.var, lit.positive)].append((jc, slot))
    return occ


def _layout(inst: NaeInstance) -> _Layout:
    n = inst.num_vars
    if n < 1:
        raise ValueError("compilation needs at least one variable")
    occ = _occurrences(inst)
    merged: list[tuple[Edge, str]] = []
    wiring: list[FusionRecord] = []
    pinned: dict[Edge, str] = {}
    chains: list[_ChainPlan] = []
    instances: list[GadgetInstance] = []

    def sun_vertex(owner: str, s: int, local: str) -> str:
        return f"{owner}:s{s}.{local}"

    def chain_plan(owner: str, kind: str, var: int | None, count: int,
                   input_edge: Edge | None, harvests: dict[int, Edge],
                   cap_positions: dict[int, int], pin_label: str | None
                   ) -> _ChainPlan:
        """Lay out one fused chain of suns.

        harvests maps sun index to that sun's outgoing merged edge;
        cap_positions maps sun index to a pendant position to terminate
        with stubs.  input_edge is the merged edge entering sun 1, absent
        for self-anchored (capped head) chains.
        """
        suns: list[_SunPlan] = []
        placement: dict[str, str] = {}
        for s in range(1, count + 1):
            parity = 0 if s % 2 == 1 else 1
            slots: list[_Slot] = []
            for j in range(6):
                cj = sun_vertex(owner, s, f"c{j}")
                pj = sun_vertex(owner, s, f"p{j}")
                placement[f"s{s}.c{j}"] = cj
                slot: _Slot | None = None
                if parity == 0 and j == 0:
                    if s == 1:
                        if input_edge is not None:
                            slot = _Slot(FUSED, input_edge)
                        else:
                            e = canonical_edge(cj, pj)
                            stubs = (canonical_edge(pj, f"{pj}~1"),
                                     canonical_edge(pj, f"{pj}~2"))
                            slot = _Slot(CAP, e, stubs)
                    else:
                        prev = canonical_edge(sun_vertex(owner, s - 1, "c5"), cj)
                        slot = _Slot(FUSED, prev)
                elif parity == 1 and j == 1:
                    prev = canonical_edge(sun_vertex(owner, s - 1, "c4"), cj)
                    slot = _Slot(FUSED, prev)
                elif parity == 0 and j == 4 and s < count:
                    link = canonical_edge(cj, sun_vertex(owner, s + 1, "c1"))
                    merged.append((link, owner))
                    slot = _Slot(FUSED, link)
                elif parity == 1 and j == 5 and s < count:
                    link = canonical_edge(cj, sun_vertex(owner, s + 1, "c0"))
                    merged.append((link, owner))
                    slot = _Slot(FUSED, link)
                elif s in harvests and j == (2 if parity == 0 else 3):
                    slot = _Slot(FUSED, harvests[s])
                elif cap_positions.get(s) == j:
                    e = canonical_edge(cj, pj)
                    stubs = (canonical_edge(pj, f"{pj}~1"),
                             canonical_edge(pj, f"{pj}~2"))
                    slot = _Slot(CAP, e, stubs)
                if slot is None:
                    slot = _Slot(PLAIN, canonical_edge(cj, pj))
                slots.append(slot)
                if slot.kind == FUSED:
                    u, v = slot.edge
                    placement[f"s{s}.p{j}"] = v if u == cj else u
                else:
                    placement[f"s{s}.p{j}"] = pj
            suns.append(_SunPlan(prefix=f"{owner}:s{s}.", parity=parity,
                                 pendants=tuple(slots)))
        if pin_label is not None:
            for sp in suns:
                for slot in sp.pendants:
                    if slot.kind in (FUSED, CAP):
                        pinned[slot.edge] = pin_label
        plan = _ChainPlan(name=owner, kind=kind, var=var, suns=tuple(suns))
        chains.append(plan)
        instances.append(GadgetInstance(name=owner, role="fanout",
                                        width=len(harvests),
                                        placement=placement))
        return plan

    # truth and falsehood chains: sun 2i-1 harvests toward variable i
    for owner, kind, label, in_idx in (("truth", "truth", "T", 0),
                                       ("false", "false", "F", 1)):
        harvests = {}
        for i in range(1, n + 1):
            e = canonical_edge(sun_vertex(owner, 2 * i - 1, "c2"), f"x{i}:a")
            harvests[2 * i - 1] = e
            merged.append((e, owner))
            wiring.append(FusionRecord(owner, i - 1, f"x{i}", in_idx))
        chain_plan(owner, kind, None, 2 * n - 1, None, harvests, {}, label)

    # variables
    var_plans: list[_VarPlan] = []
    for i in range(1, n + 1):
        name = f"x{i}"
        g = lambda v: f"{name}:{v}"
        i1 = canonical_edge(sun_vertex("truth", 2 * i - 1, "c2"), g("a"))
        i2 = canonical_edge(sun_vertex("false", 2 * i - 1, "c2"), g("a"))
        o1 = canonical_edge(g("b"), sun_vertex(f"pos{i}", 1, "c0"))
        o2 = canonical_edge(g("b"), sun_vertex(f"neg{i}", 1, "c0"))
        merged.append((o1, name))
        merged.append((o2, name))
        wiring.append(FusionRecord(name, 0, f"pos{i}", 0))
        wiring.append(FusionRecord(name, 1, f"neg{i}", 0))
        var_plans.append(_VarPlan(
            name=name, index=i,
            m1=canonical_edge(g("h"), g("a")),
            m2=canonical_edge(g("h"), g("b")),
            m3=canonical_edge(g("h"), g("c")),
            i1=i1, i2=i2, o1=o1, o2=o2))
        placement = {"h": g("h"), "a": g("a"), "b": g("b"), "c": g("c"),
                     "p": sun_vertex("truth", 2 * i - 1, "c2"),
                     "q": sun_vertex("false", 2 * i - 1, "c2"),
                     "r": sun_vertex(f"pos{i}", 1, "c0"),
                     "s": sun_vertex(f"neg{i}", 1, "c0")}
        instances.append(GadgetInstance(name=name, role="variable",
                                        width=None, placement=placement))

    # literal fanout chains
    occ_sorted = sorted(occ.items(), key=lambda kv: (kv[0][0], not kv[0][1]))
    zero_pairs = 0
    for (i, positive), uses in occ_sorted:
        owner = f"pos{i}" if positive else f"neg{i}"
        w = len(uses)
        inp = canonical_edge(f"x{i}:b", sun_vertex(owner, 1, "c0"))
        if w == 0:
            zero_pairs += 1
            chain_plan(owner, "pos" if positive else "neg", i, 1,
                       inp, {}, {1: 2}, None)
            continue
        harvests = {}
        for o, (jc, slot) in enumerate(uses):
            s = 2 * o + 2
            e = canonical_edge(sun_vertex(owner, s, "c3"),
                               f"c{jc + 1}:b{2 * slot}")
            harvests[s] = e
            merged.append((e, owner))
            wiring.append(FusionRecord(owner, o, f"c{jc + 1}", slot))
        chain_plan(owner, "pos" if positive else "neg", i, 2 * w,
                   inp, harvests, {}, None)

    # clauses
    clause_plans: list[_ClausePlan] = []
    for jc, cl in enumerate(inst.clauses):
        name = f"c{jc + 1}"
        prefix = f"{name}:"
        legs = []
        placement: dict[str, str] = {}
        for j in range(6):
            placement[f"v{j}"] = f"{prefix}v{j}"
        for j in (1, 3, 5):
            placement[f"u{j}"] = f"{prefix}u{j}"
        for slot, lit in enumerate(cl):
            jv = 2 * slot
            lit_owner = f"pos{lit.var}" if lit.positive else f"neg{lit.var}"
            o = occ[(lit.var, lit.positive)].index((jc, slot))
            inp = canonical_edge(sun_vertex(lit_owner, 2 * o + 2, "c3"),
                                 f"{prefix}b{jv}")
            legs.append(_LegPlan(
                arm=canonical_edge(f"{prefix}v{jv}", f"{prefix}a{jv}"),
                pend=canonical_edge(f"{prefix}a{jv}", f"{prefix}q{jv}"),
                wrist=canonical_edge(f"{prefix}a{jv}", f"{prefix}b{jv}"),
                inp=inp))
            for loc in (f"a{jv}", f"q{jv}", f"b{jv}"):
                placement[loc] = f"{prefix}{loc}"
            placement[f"y{jv}"] = sun_vertex(lit_owner, 2 * o + 2, "c3")
        clause_plans.append(_ClausePlan(name=name, index=jc + 1, prefix=prefix,
                                        legs=(legs[0], legs[1], legs[2])))
        instances.append(GadgetInstance(name=name, role="clause",
                                        width=None, placement=placement))

    return _Layout(chains=tuple(chains), variables=tuple(var_plans),
                   clauses=tuple(clause_plans), merged_owners=tuple(merged),
                   wiring=tuple(wiring), pinned=pinned,
                   instances=tuple(instances), zero_width_pairs=zero_pairs)


# ---------------------------------------------------------------------------
# artifact


@dataclass(frozen=True)
class ReductionArtifact:
    graph: Graph
    palette: tuple[str, ...]
    instance: NaeInstance
    gadget_instances: tuple[GadgetInstance, ...]
    edge_provenance: Mapping[Edge, str]
    wiring: tuple[FusionRecord, ...]
    pinned_hints: Mapping[Edge, str]
    zero_width_pairs: int
    compile_ops: int
    layout: _Layout = field(repr=False)

    def instance_counts(self) -> dict[str, int]:
        counts = {"fanout": 0, "variable": 0, "clause": 0}
        for gi in self.gadget_instances:
            counts[gi.role] += 1
        return counts


def compile_instance(inst: NaeInstance) -> ReductionArtifact:
    """Compile an instance into its coloring graph plus bookkeeping.

    Linear in n + m: the layout emits a bounded number of vertices, edges,
    fusions, and caps per variable, clause, and literal occurrence.
    """
    lay = _layout(inst)
    ops = 0
    provenance: dict[Edge, str] = {}

    def add(e: Edge, owner: str) -> None:
        nonlocal ops
        if e in provenance:
            raise AssertionError(f"edge {e} laid out twice")
        provenance[e] = owner
        ops += 1

    for chain in lay.chains:
        for sp in chain.suns:
            for j in range(6):
                add(sp.cycle_edge(j), chain.name)
            for slot in sp.pendants:
                if slot.kind == PLAIN:
                    add(slot.edge, chain.name)
                elif slot.kind == CAP:
                    add(slot.edge, chain.name)
                    add(slot.stubs[0], chain.name)
                    add(slot.stubs[1], chain.name)
    for vp in lay.variables:
        add(vp.m1, vp.name)
        add(vp.m2, vp.name)
        add(vp.m3, vp.name)
    for cp in lay.clauses:
        for j in range(6):
            add(cp.cycle_edge(j), cp.name)
        for j in (1, 3, 5):
            add(cp.pendant_edge(j), cp.name)
        for leg in cp.legs:
            add(leg.arm, cp.name)
            add(leg.pend, cp.name)
            add(leg.wrist, cp.name)
    for e, owner in lay.merged_owners:
        add(e, owner)
        ops += 1  # a fusion is one extra mutation beyond the edge add

    graph = build_graph(provenance.keys())
    return ReductionArtifact(
        graph=graph, palette=FIVE_PALETTE, instance=inst,
        gadget_instances=lay.instances, edge_provenance=provenance,
        wiring=lay.wiring, pinned_hints=dict(lay.pinned),
        zero_width_pairs=lay.zero_width_pairs, compile_ops=ops, layout=lay)


# ---------------------------------------------------------------------------
# color templates
#
# A sun's valid colorings always put one shared color S on the pendants of
# the designated parity, a second color U on the other three pendants, and
# repeat three further colors around the hexagon with period 3.  The
# tables below fix one such completion per chain flavor, chosen so that
# every fusion used by the layout joins compatibly colored neighborhoods.

_CHAIN_TEMPLATES: dict[tuple[str, int], tuple[tuple[str, str, str], str, str]] = {
    ("truth", 0): (("F", "1", "2"), "T", "3"),
    ("truth", 1): (("2", "3", "1"), "T", "F"),
    ("false", 0): (("T", "1", "2"), "F", "3"),
    ("false", 1): (("2", "3", "1"), "F", "T"),
}

_CLAUSE_BETA: dict[tuple[str, str, str], tuple[str, str, str]] = {
    ("T", "T", "F"): ("F", "1", "T"),
    ("T", "F", "T"): ("T", "F", "1"),
    ("F", "T", "T"): ("F", "T", "1"),
    ("F", "F", "T"): ("T", "1", "F"),
    ("F", "T", "F"): ("F", "T", "1"),
    ("T", "F", "F"): ("T", "F", "1"),
}


def _chain_template(kind: str, value: str, parity: int
                    ) -> tuple[tuple[str, str, str], str, str]:
    if kind in ("truth", "false"):
        return _CHAIN_TEMPLATES[(kind, parity)]
    other = "F" if value == "T" else "T"
    if parity == 0:
        return ("2", "1", "3"), value, other
    return ("3", other, "1"), value, "2"


def _emit_chain(chain: _ChainPlan, value: str) -> dict[Edge, str]:
    out: dict[Edge, str] = {}
    for sp in chain.suns:
        beta, s_col, u_col = _chain_template(chain.kind, value, sp.parity)
        for j in range(6):
            out[sp.cycle_edge(j)] = beta[j % 3]
        for j, slot in enumerate(sp.pendants):
            out[slot.edge] = s_col if j % 2 == sp.parity else u_col
            if slot.kind == CAP:
                if chain.kind in ("truth", "false"):
                    labels = ("1", "3")
                else:
                    other = "F" if value == "T" else "T"
                    labels = tuple(sorted((other, "2"), key=PALETTE_INDEX.get))
                for stub, lab in zip(sorted(slot.stubs), labels):
                    out[stub] = lab
    return out


def _emit_variable(vp: _VarPlan, value: bool) -> dict[Edge, str]:
    return {vp.m1: "3", vp.m2: "1", vp.m3: "2",
            vp.i1: "T", vp.i2: "F",
            vp.o1: "T" if value else "F",
            vp.o2: "F" if value else "T"}


def _emit_clause(cp: _ClausePlan, w: tuple[str, str, str]) -> dict[Edge, str]:
    beta = _CLAUSE_BETA[w]
    out: dict[Edge, str] = {}
    for j in range(6):
        out[cp.cycle_edge(j)] = beta[j % 3]
    for j in (1, 3, 5):
        out[cp.pendant_edge(j)] = "2"
    for slot, leg in enumerate(cp.legs):
        jv = 2 * slot
        out[leg.arm] = "3"
        out[leg.pend] = beta[(jv + 1) % 3]
        out[leg.wrist] = "2"
        out[leg.inp] = w[slot]
    return out


def _clause_scenarios(cl: Clause) -> list[tuple[str, str, str]]:
    """All not-all-equal input triples this clause can actually produce."""
    vars_in = sorted({lit.var for lit in cl})
    seen: list[tuple[str, str, str]] = []
    for bits in itertools.product((False, True), repeat=len(vars_in)):
        local = dict(zip(vars_in, bits))
        w = tuple("T" if local[lit.var] == lit.positive else "F" for lit in cl)
        if len(set(w)) > 1 and w not in seen:
            seen.append(w)
    return seen


def _intersect(emissions: Sequence[Mapping[Edge, str]]) -> dict[Edge, str]:
    first = emissions[0]
    out = dict(first)
    for other in emissions[1:]:
        for e in list(out):
            if other.get(e) != out[e]:
                del out[e]
    return out


def skeleton_pins(art: "ReductionArtifact") -> dict[Edge, str]:
    """The value-independent part of the stored completion templates.

    Every NAE-satisfying assignment's stitched coloring agrees with these
    pins, so adding them as solver hints preserves the satisfiability
    equivalence while collapsing the gadget interiors' symmetry: with the
    hexagon cycles pinned, pendant equality around each sun becomes plain
    forward-checking propagation instead of a global counting argument.
    """
    pins: dict[Edge, str] = {}
    for chain in art.layout.chains:
        if chain.kind == "truth":
            pins.update(_emit_chain(chain, "T"))
        elif chain.kind == "false":
            pins.update(_emit_chain(chain, "F"))
        else:
            pins.update(_intersect([_emit_chain(chain, "T"),
                                    _emit_chain(chain, "F")]))
    for vp in art.layout.variables:
        pins.update(_intersect([_emit_variable(vp, True),
                                _emit_variable(vp, False)]))
    for cp, cl in zip(art.layout.clauses, art.instance.clauses):
        scenarios = _clause_scenarios(cl)
        if scenarios:
            pins.update(_intersect([_emit_clause(cp, w) for w in scenarios]))
    return pins


@dataclass(frozen=True)
class ColoringResult:
    coloring: dict[Edge, str]
    ops: int


@dataclass(frozen=True)
class AssignmentResult:
    values: tuple[bool, ...]
    ops: int


class ColoringRejected(ValueError):
    """A coloring handed to the extractor failed its precondition."""

    def __init__(self, reason: str, violations: tuple = ()):
        super().__init__(reason)
        self.reason = reason
        self.violations = violations


def assignment_to_coloring(art: ReductionArtifact, values: Sequence[bool]
                           ) -> ColoringResult:
    """Stitch stored gadget completions into a full valid coloring.

    No search happens here: every edge color comes from a constant-size
    template lookup, so the run time is linear in the edge count.  The
    assignment must NAE-satisfy the instance; a violated clause has no
    template (all-equal inputs are uncolorable by construction) and is
    reported by its 1-based index.
    """
    inst = art.instance
    if len(values) != inst.num_vars:
        raise ValueError(f"assignment length {len(values)} does not match "
                         f"{inst.num_vars} variables")
    ok, bad = check_nae(inst, values)
    if not ok:
        raise ValueError(f"assignment does not NAE-satisfy clause {bad}")
    ops = 0
    coloring: dict[Edge, str] = {}

    def emit(e: Edge, lab: str) -> None:
        nonlocal ops
        ops += 1
        prev = coloring.get(e)
        if prev is not None and prev != lab:
            raise AssertionError(
                f"template mismatch on edge {e}: {prev} vs {lab}")
        coloring[e] = lab

    for chain in art.layout.chains:
        if chain.kind == "truth":
            value = "T"
        elif chain.kind == "false":
            value = "F"
        else:
            lit_true = (values[chain.var - 1] if chain.kind == "pos"
                        else not values[chain.var - 1])
            value = "T" if lit_true else "F"
        for e, lab in _emit_chain(chain, value).items():
            emit(e, lab)
    for vp in art.layout.variables:
        for e, lab in _emit_variable(vp, values[vp.index - 1]).items():
            emit(e, lab)
    for cp, cl in zip(art.layout.clauses, inst.clauses):
        w = tuple("T" if lit.value_under(values) else "F" for lit in cl)
        for e, lab in _emit_clause(cp, w).items():
            emit(e, lab)
    missing = set(art.graph.edges) - set(coloring)
    if missing:
        raise AssertionError(f"template pass left {len(missing)} edges uncolored")
    return ColoringResult(coloring=coloring, ops=ops)


def coloring_to_assignment(art: ReductionArtifact, coloring: Mapping[Edge, str]
                           ) -> AssignmentResult:
    """Read the assignment off a valid, hint-respecting coloring.

    Variable i's value is the color of its positive-side output edge:
    T means true, F means false.  Rejects colorings that fail the
    verifier or that break a pinned hint, since the value extraction is
    only meaningful relative to the pinned truth-side semantics.
    """
    res = verify(art.graph, coloring, 5)
    ops = len(art.graph.edges)
    if not res.valid:
        raise ColoringRejected(
            f"coloring is invalid: {len(res.violations)} conflicting pairs, "
            f"{len(res.uncolored)} uncolored edges",
            violations=res.violations)
    for e, lab in sorted(art.pinned_hints.items()):
        ops += 1
        if coloring.get(e) != lab:
            raise ColoringRejected(
                f"coloring violates pinned hint: edge {e[0]} {e[1]} is "
                f"{coloring.get(e)}, pinned {lab}")
    values: list[bool] = []
    for vp in art.layout.variables:
        ops += 1
        lab = coloring[vp.o1]
        if lab == "T":
            values.append(True)
        elif lab == "F":
            values.append(False)
        else:
            raise ColoringRejected(
                f"variable {vp.index} output edge carries {lab}, "
                f"expected T or F")
    ok, bad = check_nae(art.instance, values)
    if not ok:
        raise AssertionError(
            f"extracted assignment violates clause {bad}; this indicates a "
            f"soundness bug in the construction")
    return AssignmentResult(values=tuple(values), ops=ops)


# ---------------------------------------------------------------------------
# provenance sidecar


def write_provenance(art: ReductionArtifact, comments: Sequence[str] = ()) -> str:
    lines = [f"# {c}" if c else "#" for c in comments]
    body = [f"prov {u} {v} {owner}"
            for (u, v), owner in art.edge_provenance.items()]
    body += [f"fuse {r.producer} {r.out_index} {r.consumer} {r.in_index}"
             for r in art.wiring]
    return "\n".join(lines + sorted(body)) + "\n"


def parse_provenance(text: str) -> tuple[dict[Edge, str], list[FusionRecord]]:
    from .graph import iter_directives

    prov: dict[Edge, str] = {}
    wiring: list[FusionRecord] = []
    for lineno, parts in iter_directives(text):
        if parts[0] == "prov" and len(parts) == 4:
            prov[canonical_edge(parts[1], parts[2])] = parts[3]
        elif parts[0] == "fuse" and len(parts) == 5:
            try:
                oi, ii = int(parts[2]), int(parts[4])
            except ValueError:
                raise ValueError(f"line {lineno}: fusion indices must be "
                                 f"integers") from None
            wiring.append(FusionRecord(parts[1], oi, parts[3], ii))
        else:
            raise ValueError(f"line {lineno}: unrecognized line "
                             f"{' '.join(parts)!r}")
    return prov, wiring


# ---------------------------------------------------------------------------
# round trip


@dataclass(frozen=True)
class RoundtripReport:
    instance: NaeInstance
    nae_satisfiable: bool
    solve_status: str
    nodes: int
    agree: bool | None
    extraction_ok: bool | None
    identity_ok: bool | None

    def as_text(self) -> str:
        inst = self.instance
        lines = [f"instance n={inst.num_vars} m={inst.num_clauses}",
                 f"nae brute force: {'sat' if self.nae_satisfiable else 'unsat'}",
                 f"coloring search: {self.solve_status} (nodes={self.nodes})"]
        if self.solve_status == "budget":
            lines.append("verdict: BUDGET")
        else:
            lines.append(f"verdict: {'AGREE' if self.agree else 'DISAGREE'}")
        if self.extraction_ok is not None:
            lines.append("extracted assignment NAE-satisfies: "
                         + ("yes" if self.extraction_ok else "no"))
        if self.identity_ok is not None:
            lines.append("transform round trip is identity: "
                         + ("yes" if self.identity_ok else "no"))
        return "\n".join(lines) + "\n"


def roundtrip_report(inst: NaeInstance, node_budget: int | None = None,
                     var_guard: int = 24) -> RoundtripReport:
    """Compare NAE brute force against the compiled coloring search."""
    art = compile_instance(inst)
    nae_sat, witness = nae_brute_force(inst, var_guard)
    res = solve(art.graph, 5, hints=skeleton_pins(art), node_budget=node_budget)
    if res.status == "budget":
        return RoundtripReport(instance=inst, nae_satisfiable=nae_sat,
                               solve_status=res.status, nodes=res.nodes,
                               agree=None, extraction_ok=None, identity_ok=None)
    agree = nae_sat == res.is_sat
    extraction_ok: bool | None = None
    identity_ok: bool | None = None
    if res.is_sat:
        try:
            extracted = coloring_to_assignment(art, res.coloring)
            extraction_ok = check_nae(inst, extracted.values)[0]
        except ColoringRejected:
            extraction_ok = False
    if nae_sat:
        forward = assignment_to_coloring(art, witness)
        back = coloring_to_assignment(art, forward.coloring)
        identity_ok = back.values == witness
    return RoundtripReport(instance=inst, nae_satisfiable=nae_sat,
                           solve_status=res.status, nodes=res.nodes,
                           agree=agree, extraction_ok=extraction_ok,
                           identity_ok=identity_ok)
