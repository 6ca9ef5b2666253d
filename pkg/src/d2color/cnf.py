"""DIMACS CNF encoding of the distance-2 edge coloring decision problem.

One propositional variable per (edge, label).  Clauses: every edge takes at
least one label, at most one label, and conflicting edges never share one.
Hints become unit clauses.  The header comments carry the variable map so
the encoding is self-describing.
"""

from __future__ import annotations

from typing import Iterable, Mapping

from .coloring import conflict_relation, palette_for
from .graph import Edge, Graph


def encode_cnf(g: Graph, k: int, hints: Mapping[Edge, str] | None = None) -> str:
    """Render the coloring instance as a DIMACS CNF document.

    Variable numbering is edge-major in sorted edge order: edge i with label
    j maps to i*k + j + 1.  The result is satisfiable exactly when a valid
    k-coloring extending the hints exists.
    """
    palette = palette_for(k)
    label_index = {c: j for j, c in enumerate(palette)}
    edges = list(g.edges)
    index = {e: i for i, e in enumerate(edges)}
    rel = conflict_relation(g)

    def var(i: int, j: int) -> int:
        return i * k + j + 1

    clauses: list[tuple[int, ...]] = []
    for i in range(len(edges)):
        clauses.append(tuple(var(i, j) for j in range(k)))
        for j1 in range(k):
            for j2 in range(j1 + 1, k):
                clauses.append((-var(i, j1), -var(i, j2)))
    for e, f in sorted(rel.pairs):
        i1, i2 = index[e], index[f]
        for j in range(k):
            clauses.append((-var(i1, j), -var(i2, j)))
    if hints:
        for e in sorted(hints):
            if e not in index:
                raise ValueError(f"hint on unknown edge {e[0]} {e[1]}")
            lab = hints[e]
            if lab not in label_index:
                raise ValueError(f"hint label {lab!r} not in the k={k} palette")
            clauses.append((var(index[e], label_index[lab]),))

    lines = []
    for i, (u, v) in enumerate(edges):
        for j, lab in enumerate(palette):
            lines.append(f"c var {var(i, j)} = edge {u} {v} color {lab}")
    lines.append(f"p cnf {len(edges) * k} {len(clauses)}")
    for clause in clauses:
        lines.append(" ".join(str(lit) for lit in clause) + " 0")
    return "\n".join(lines) + "\n"


def parse_dimacs(text: str) -> tuple[int, list[tuple[int, ...]]]:
    """Read a DIMACS CNF document back into (num_vars, clauses)."""
    num_vars = 0
    clauses: list[tuple[int, ...]] = []
    buffer: list[int] = []
    seen_header = False
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("p"):
            parts = line.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise ValueError(f"bad DIMACS header: {line!r}")
            num_vars = int(parts[2])
            seen_header = True
            continue
        if not seen_header:
            raise ValueError("clause before DIMACS header")
        for tok in line.split():
            lit = int(tok)
            if lit == 0:
                clauses.append(tuple(buffer))
                buffer = []
            else:
                buffer.append(lit)
    if buffer:
        raise ValueError("unterminated final clause")
    return num_vars, clauses


def dpll_satisfiable(num_vars: int, clauses: Iterable[tuple[int, ...]]) -> bool:
    """Small DPLL decision procedure for cross-checking encodings.

    Unit propagation plus branching on the smallest unassigned variable.
    Only meant for the modest formulas the test suite produces.
    """
    assignment: dict[int, bool] = {}

    def check(cls: list[tuple[int, ...]]) -> bool:
        while True:
            unit: int | None = None
            next_cls: list[tuple[int, ...]] = []
            for clause in cls:
                live: list[int] = []
                satisfied = False
                for lit in clause:
                    val = assignment.get(abs(lit))
                    if val is None:
                        live.append(lit)
                    elif (lit > 0) == val:
                        satisfied = True
                        break
                if satisfied:
                    continue
                if not live:
                    return False
                if len(live) == 1 and unit is None:
                    unit = live[0]
                next_cls.append(tuple(live))
            cls = next_cls
            if unit is None:
                break
            assignment[abs(unit)] = unit > 0
        if not cls:
            return True
        branch = min(abs(lit) for clause in cls for lit in clause)
        saved = dict(assignment)
        for value in (True, False):
            assignment[branch] = value
            if check(cls):
                return True
            assignment.clear()
            assignment.update(saved)
        return False

    return check([tuple(c) for c in clauses])
