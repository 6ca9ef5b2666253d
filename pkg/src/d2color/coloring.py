"""Distance-2 edge coloring: conflicts, verification, exact search.

Two edges conflict when they share an endpoint or some third edge touches
both.  A coloring is valid when conflicting edges never share a label.  The
solver is exact: "unsat" means the whole space was refuted, and a separate
budget outcome reports when the search was cut short instead.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping, Sequence

from .graph import Edge, Graph, GraphFormatError, canonical_edge, iter_directives

FIVE_PALETTE = ("T", "F", "1", "2", "3")


def palette_for(k: int) -> tuple[str, ...]:
    """The ordered label list for a k-color search.

    k = 5 is the palette the reduction cares about.  Other sizes get
    generic labels k1..kN so files stay unambiguous about their arity.
    """
    if k < 1:
        raise ValueError(f"palette size must be positive, got {k}")
    if k == 5:
        return FIVE_PALETTE
    return tuple(f"k{i}" for i in range(1, k + 1))


@dataclass(frozen=True)
class ConflictRelation:
    """All conflicting edge pairs of a graph, plus per-edge neighbor lists."""

    edges: tuple[Edge, ...]
    pairs: frozenset[tuple[Edge, Edge]]
    neighbors: dict[Edge, tuple[Edge, ...]]

    def conflicts(self, e: Edge, f: Edge) -> bool:
        a, b = (e, f) if e <= f else (f, e)
        return (a, b) in self.pairs


def conflict_relation(g: Graph) -> ConflictRelation:
    """Collect, for every edge, the edges within distance two in the line graph.

    For edge (u, v): everything incident to u or v, then everything incident
    to the far endpoints of those edges.
    """
    incident: dict[str, list[Edge]] = {v: [] for v in g.vertices}
    for e in g.edges:
        incident[e[0]].append(e)
        incident[e[1]].append(e)
    neighbors: dict[Edge, tuple[Edge, ...]] = {}
    pairs: set[tuple[Edge, Edge]] = set()
    for e in g.edges:
        near: set[Edge] = set()
        for endpoint in e:
            for f in incident[endpoint]:
                near.add(f)
                for far in f:
                    near.update(incident[far])
        near.discard(e)
        ordered = tuple(sorted(near))
        neighbors[e] = ordered
        for f in ordered:
            if e < f:
                pairs.add((e, f))
    return ConflictRelation(edges=g.edges, pairs=frozenset(pairs),
                            neighbors=neighbors)


@dataclass(frozen=True)
class VerifyResult:
    """Verdict of :func:`verify`; ``valid`` iff the three defect lists are empty.

    violations: conflicting pairs that share a label, all of them.
    uncolored:  edges with no label.
    overpalette: labels outside what k allows.
    """

    valid: bool
    violations: tuple[tuple[Edge, Edge], ...]
    uncolored: tuple[Edge, ...]
    overpalette: tuple[str, ...]

    def as_text(self) -> str:
        if self.valid:
            return "valid\n"
        lines = []
        for e, f in self.violations:
            lines.append(f"violation {e[0]} {e[1]} / {f[0]} {f[1]}")
        for e in self.uncolored:
            lines.append(f"uncolored {e[0]} {e[1]}")
        for label in self.overpalette:
            lines.append(f"overpalette {label}")
        return "\n".join(lines) + "\n"


def verify(g: Graph, coloring: Mapping[Edge, str], k: int) -> VerifyResult:
    """Check a (possibly partial) coloring against the distance-2 rule.

    Labels: at k = 5 they must come from {T,F,1,2,3}.  For other k any
    labels are accepted as long as at most k distinct ones appear; the
    excess, in sorted order, is reported as overpalette.
    """
    if k < 1:
        raise ValueError(f"palette size must be positive, got {k}")
    for e in coloring:
        if e not in g.edge_set:
            raise ValueError(f"coloring refers to unknown edge {e[0]} {e[1]}")
    uncolored = tuple(e for e in g.edges if e not in coloring)
    used = sorted(set(coloring.values()))
    if k == 5:
        bad = tuple(x for x in used if x not in FIVE_PALETTE)
    else:
        bad = tuple(used[k:])
    rel = conflict_relation(g)
    violations = tuple(
        (e, f) for e, f in sorted(rel.pairs)
        if e in coloring and f in coloring and coloring[e] == coloring[f])
    ok = not violations and not uncolored and not bad
    return VerifyResult(valid=ok, violations=violations,
                        uncolored=uncolored, overpalette=bad)


@dataclass(frozen=True)
class SolveResult:
    """Outcome of :func:`solve`.

    status is one of "sat", "unsat", "budget".  "unsat" is an exhaustive
    refutation; "budget" means the node budget ran out first and nothing is
    claimed either way.  ``conflict_witness`` carries the offending hint
    pair when two hints clash directly.
    """

    status: str
    coloring: dict[Edge, str] | None
    nodes: int
    palette: tuple[str, ...]
    conflict_witness: tuple[Edge, Edge] | None = None

    @property
    def is_sat(self) -> bool:
        return self.status == "sat"


def solve(g: Graph, k: int, hints: Mapping[Edge, str] | None = None,
          node_budget: int | None = None) -> SolveResult:
    """Exact k-coloring search under the distance-2 conflict rule.

    Backtracking over edges, most-saturated first (ties to the smallest
    endpoint pair), values in palette order, with forward pruning of the
    remaining candidate sets.  Dead ends jump back to the deepest decision
    that contributed to the wipeout, which keeps refutations on composed
    instances from thrashing between unrelated regions.

    Hints preassign labels.  Two hints that conflict directly yield an
    immediate unsat with the pair as witness.
    """
    palette = palette_for(k)
    label_index = {c: i for i, c in enumerate(palette)}
    edges = list(g.edges)
    n = len(edges)
    index = {e: i for i, e in enumerate(edges)}
    rel = conflict_relation(g)
    conflicts = [tuple(index[f] for f in rel.neighbors[e]) for e in edges]

    color = [-1] * n           # palette index per edge
    level = [0] * n            # assignment depth, hints sit at level 0
    cnt = [[0] * k for _ in range(n)]   # assigned conflicting neighbors per label
    distinct = [0] * n         # how many labels are blocked (= saturation)
    prune_src = [dict() for _ in range(n)]  # edge -> number of labels it blocks here
    conf_acc: list[set[int]] = [set() for _ in range(n)]
    uncolored = set(range(n))
    nodes = 0

    def block(i: int, c: int, src: int) -> bool:
        cnt[i][c] += 1
        if cnt[i][c] == 1:
            distinct[i] += 1
        prune_src[i][src] = prune_src[i].get(src, 0) + 1
        return distinct[i] == k

    def unblock(i: int, c: int, src: int) -> None:
        cnt[i][c] -= 1
        if cnt[i][c] == 0:
            distinct[i] -= 1
        left = prune_src[i][src] - 1
        if left:
            prune_src[i][src] = left
        else:
            del prune_src[i][src]

    def assign(i: int, c: int, lvl: int) -> int | None:
        """Place label c on edge i; return a wiped-out neighbor or None."""
        color[i] = c
        level[i] = lvl
        uncolored.discard(i)
        wiped = None
        for j in conflicts[i]:
            if color[j] == -1 and block(j, c, i) and wiped is None:
                wiped = j
        return wiped

    def unassign(i: int) -> None:
        c = color[i]
        for j in conflicts[i]:
            if color[j] == -1:
                unblock(j, c, i)
        color[i] = -1
        uncolored.add(i)

    if hints:
        for e in sorted(hints):
            if e not in index:
                raise ValueError(f"hint on unknown edge {e[0]} {e[1]}")
            lab = hints[e]
            if lab not in label_index:
                raise ValueError(f"hint label {lab!r} not in the k={k} palette")
        for e in sorted(hints):
            i = index[e]
            c = label_index[hints[e]]
            if cnt[i][c] > 0:
                for j in conflicts[i]:
                    if color[j] == c:
                        witness = tuple(sorted((edges[j], e)))
                        return SolveResult(status="unsat", coloring=None,
                                           nodes=0, palette=palette,
                                           conflict_witness=witness)  # type: ignore[arg-type]
            assign(i, c, 0)
        for i in uncolored:
            if distinct[i] == k:
                return SolveResult(status="unsat", coloring=None, nodes=0,
                                   palette=palette)

    # Each frame: (edge, label it currently holds).  conf_acc[e] gathers the
    # assigned edges implicated in failures under e's subtree.
    frames: list[tuple[int, int]] = []

    def result(status: str, coloring: dict[Edge, str] | None) -> SolveResult:
        return SolveResult(status=status, coloring=coloring, nodes=nodes,
                           palette=palette)

    current: int | None = None
    next_color = 0
    while True:
        if current is None:
            if not uncolored:
                out = {edges[i]: palette[color[i]] for i in range(n)}
                return result("sat", out)
            current = min(uncolored, key=lambda i: (-distinct[i], i))
            next_color = 0

        placed = False
        for c in range(next_color, k):
            if cnt[current][c] > 0:
                continue
            nodes += 1
            if node_budget is not None and nodes > node_budget:
                return result("budget", None)
            wiped = assign(current, c, len(frames) + 1)
            if wiped is None:
                frames.append((current, c))
                placed = True
                break
            conf_acc[current].update(k2 for k2 in prune_src[wiped] if k2 != current)
            unassign(current)
        if placed:
            current = None
            continue

        # every label failed at `current`: jump to the deepest culprit
        culprits = set(prune_src[current]) | conf_acc[current]
        culprits = {j for j in culprits if level[j] > 0}
        if not culprits:
            return result("unsat", None)
        target = max(culprits, key=lambda j: level[j])
        conf_acc[current].clear()
        while frames:
            i, c = frames.pop()
            if i == target:
                conf_acc[target].update(j for j in culprits if j != target)
                unassign(target)
                current = target
                next_color = c + 1
                break
            unassign(i)
            conf_acc[i].clear()
        else:
            raise AssertionError("backjump target vanished from the stack")


def enumerate_colorings(g: Graph, k: int,
                        pins: Mapping[Edge, str] | None = None
                        ) -> Iterator[dict[Edge, str]]:
    """Yield every valid k-coloring extending ``pins``, in a fixed order.

    Plain backtracking in sorted edge order with direct conflict checks.
    Kept deliberately independent of :func:`solve` so the two can vouch for
    each other in tests and certification sweeps.
    """
    palette = palette_for(k)
    edges = list(g.edges)
    index = {e: i for i, e in enumerate(edges)}
    rel = conflict_relation(g)
    conflicts = [tuple(index[f] for f in rel.neighbors[e]) for e in edges]
    fixed: dict[int, str] = {}
    if pins:
        for e, lab in pins.items():
            if e not in index:
                raise ValueError(f"pin on unknown edge {e[0]} {e[1]}")
            if lab not in palette:
                raise ValueError(f"pin label {lab!r} not in the k={k} palette")
            fixed[index[e]] = lab
    for i, lab in fixed.items():
        for j in conflicts[i]:
            if fixed.get(j) == lab:
                return
    n = len(edges)
    assigned: list[str | None] = [None] * n
    order = sorted(range(n), key=lambda i: (i not in fixed, i))

    def extend(pos: int) -> Iterator[dict[Edge, str]]:
        if pos == n:
            yield {edges[i]: assigned[i] for i in range(n)}  # type: ignore[misc]
            return
        i = order[pos]
        choices = (fixed[i],) if i in fixed else palette
        for lab in choices:
            if any(assigned[j] == lab for j in conflicts[i]):
                continue
            assigned[i] = lab
            yield from extend(pos + 1)
            assigned[i] = None

    yield from extend(0)


def brute_force_index(g: Graph, k_max: int, edge_guard: int = 16) -> int | None:
    """Smallest k <= k_max admitting a valid coloring, else None.

    Exhaustive by design and deliberately dumb: fixed edge order, no
    propagation, the only symmetry reduction is pinning the first edge to
    the first label.  Graphs above ``edge_guard`` edges are refused.
    """
    if len(g.edges) > edge_guard:
        raise ValueError(
            f"{len(g.edges)} edges exceeds the brute-force guard of {edge_guard}")
    if not g.edges:
        return 0
    edges = list(g.edges)
    n = len(edges)
    index = {e: i for i, e in enumerate(edges)}
    rel = conflict_relation(g)
    conflicts = [tuple(index[f] for f in rel.neighbors[e]) for e in edges]

    def exists(k: int) -> bool:
        assigned = [-1] * n
        assigned[0] = 0

        def extend(i: int) -> bool:
            if i == n:
                return True
            for c in range(k):
                if any(assigned[j] == c for j in conflicts[i]):
                    continue
                assigned[i] = c
                if extend(i + 1):
                    return True
                assigned[i] = -1
            return False

        return extend(1)

    for k in range(1, k_max + 1):
        if exists(k):
            return k
    return None


# ---------------------------------------------------------------------------
# text format: one `c <id1> <id2> <label>` line per edge


def parse_coloring(text: str) -> dict[Edge, str]:
    out: dict[Edge, str] = {}
    for lineno, parts in iter_directives(text):
        if parts[0] != "c" or len(parts) != 4:
            raise GraphFormatError(
                f"line {lineno}: unrecognized line {' '.join(parts)!r}")
        u, v, label = parts[1], parts[2], parts[3]
        if u == v:
            raise GraphFormatError(f"line {lineno}: self-loop at vertex {u}")
        e = canonical_edge(u, v)
        if e in out and out[e] != label:
            raise GraphFormatError(
                f"line {lineno}: edge {u} {v} recolored from {out[e]} to {label}")
        out[e] = label
    return out


def write_coloring(coloring: Mapping[Edge, str],
                   comments: Sequence[str] = ()) -> str:
    header = [f"# {c}" if c else "#" for c in comments]
    body = [f"c {u} {v} {coloring[(u, v)]}" for u, v in sorted(coloring)]
    return "\n".join(header + body) + "\n"
