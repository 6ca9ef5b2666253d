"""Undirected simple graphs plus the structural probes used across this package.

Vertex identifiers are opaque strings with a total (string) order.  Edges are
unordered pairs kept as sorted tuples.  Everything is deterministic: iteration
follows sorted order, tie-breaks go to the smallest identifier, and the text
format round-trips byte for byte.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from heapq import heapify, heappop, heappush
from typing import Callable, Iterable, Iterator, Mapping, Sequence

Vertex = str
Edge = tuple[str, str]


class GraphFormatError(ValueError):
    """A text document does not follow the v/e line format."""


def canonical_edge(u: Vertex, v: Vertex) -> Edge:
    """Order an endpoint pair so equal edges compare equal."""
    if u == v:
        raise ValueError(f"self-loop at vertex {u}")
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    """Immutable simple graph.

    Build instances through :func:`build_graph`, which canonicalizes edges,
    collapses duplicates, and rejects self-loops.  ``vertices`` and ``edges``
    are sorted tuples, so two graphs over the same data compare equal.
    """

    vertices: tuple[Vertex, ...]
    edges: tuple[Edge, ...]

    @cached_property
    def adjacency(self) -> dict[Vertex, tuple[Vertex, ...]]:
        nbrs: dict[Vertex, list[Vertex]] = {v: [] for v in self.vertices}
        for u, v in self.edges:
            nbrs[u].append(v)
            nbrs[v].append(u)
        return {v: tuple(sorted(ns)) for v, ns in nbrs.items()}

    @cached_property
    def edge_set(self) -> frozenset[Edge]:
        return frozenset(self.edges)

    def degree(self, v: Vertex) -> int:
        return len(self.adjacency[v])

    @cached_property
    def max_degree(self) -> int:
        if not self.vertices:
            return 0
        return max(len(ns) for ns in self.adjacency.values())

    def has_edge(self, u: Vertex, v: Vertex) -> bool:
        if u == v:
            return False
        return canonical_edge(u, v) in self.edge_set

    def incident_edges(self, v: Vertex) -> tuple[Edge, ...]:
        return tuple(canonical_edge(v, w) for w in self.adjacency[v])


def build_graph(edges: Iterable[tuple[Vertex, Vertex]],
                vertices: Iterable[Vertex] | None = None) -> Graph:
    """Construct a :class:`Graph` from endpoint pairs.

    Duplicate edges collapse to one.  Self-loops raise ``ValueError`` naming
    the offending vertex.  When ``vertices`` is given it must cover every
    endpoint (isolated vertices are allowed); when omitted the vertex set is
    inferred from the edges.
    """
    canon = sorted({canonical_edge(u, v) for u, v in edges})
    touched = {u for e in canon for u in e}
    if vertices is None:
        verts = touched
    else:
        verts = set(vertices)
        missing = touched - verts
        if missing:
            raise ValueError(
                f"edge endpoint {min(missing)!r} is not in the vertex set")
    return Graph(vertices=tuple(sorted(verts)), edges=tuple(canon))


def relabel(g: Graph, mapping: Mapping[Vertex, Vertex] | Callable[[Vertex], Vertex]) -> Graph:
    """Rename every vertex through ``mapping``; the result must stay simple."""
    fn = mapping if callable(mapping) else mapping.__getitem__
    new_vertices = [fn(v) for v in g.vertices]
    if len(set(new_vertices)) != len(new_vertices):
        raise ValueError("relabeling collapses distinct vertices")
    return build_graph(((fn(u), fn(v)) for u, v in g.edges),
                       vertices=new_vertices)


# ---------------------------------------------------------------------------
# text format
#
# One directive per line.  '#' starts a comment, blank lines are ignored.
#   v <id>
#   e <id> <id>
# Canonical output sorts the directive lines lexicographically, which puts
# edge lines before vertex lines ('e' < 'v').  Parsers accept any order.


def iter_directives(text: str) -> Iterator[tuple[int, list[str]]]:
    """Yield ``(line_number, fields)`` for every non-comment, non-blank line."""
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        yield lineno, line.split()


def parse_graph(text: str) -> Graph:
    """Parse the v/e text format.

    Every edge endpoint must be declared by a ``v`` line somewhere in the
    document (order does not matter).  Duplicate ``e`` lines collapse, same
    as :func:`build_graph`.
    """
    declared: set[Vertex] = set()
    edges: list[tuple[Vertex, Vertex, int]] = []
    for lineno, parts in iter_directives(text):
        if parts[0] == "v" and len(parts) == 2:
            declared.add(parts[1])
        elif parts[0] == "e" and len(parts) == 3:
            u, v = parts[1], parts[2]
            if u == v:
                raise GraphFormatError(f"line {lineno}: self-loop at vertex {u}")
            edges.append((u, v, lineno))
        else:
            raise GraphFormatError(
                f"line {lineno}: unrecognized line {' '.join(parts)!r}")
    for u, v, lineno in edges:
        for x in (u, v):
            if x not in declared:
                raise GraphFormatError(
                    f"line {lineno}: edge references undeclared vertex {x}")
    return build_graph(((u, v) for u, v, _ in edges), vertices=declared)


def write_graph(g: Graph, comments: Sequence[str] = ()) -> str:
    """Render a graph in canonical form, optionally led by comment lines."""
    header = [f"# {c}" if c else "#" for c in comments]
    body = sorted([f"v {v}" for v in g.vertices]
                  + [f"e {u} {v}" for u, v in g.edges])
    return "\n".join(header + body) + "\n"


# ---------------------------------------------------------------------------
# structural probes


@dataclass(frozen=True)
class BipartitionResult:
    """Outcome of the two-coloring attempt.

    Exactly one of ``classes`` and ``odd_cycle`` is set.  ``classes`` maps
    every vertex to 0 or 1, with the smallest vertex of each component in
    class 0.  ``odd_cycle`` lists the vertices of a witness cycle in order;
    the closing edge from last back to first is implicit.
    """

    classes: dict[Vertex, int] | None
    odd_cycle: tuple[Vertex, ...] | None

    @property
    def is_bipartite(self) -> bool:
        return self.classes is not None


def bipartition(g: Graph) -> BipartitionResult:
    """Two-color the graph by BFS, or return an odd-cycle witness.

    Component roots are chosen by smallest vertex identifier and always land
    in class 0, so the partition is deterministic.
    """
    classes: dict[Vertex, int] = {}
    parent: dict[Vertex, Vertex | None] = {}
    for root in g.vertices:
        if root in classes:
            continue
        classes[root] = 0
        parent[root] = None
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for w in g.adjacency[u]:
                if w not in classes:
                    classes[w] = 1 - classes[u]
                    parent[w] = u
                    queue.append(w)
                elif classes[w] == classes[u]:
                    return BipartitionResult(
                        classes=None, odd_cycle=_odd_cycle(u, w, parent))
    return BipartitionResult(classes=classes, odd_cycle=None)


def _odd_cycle(u: Vertex, w: Vertex,
               parent: Mapping[Vertex, Vertex | None]) -> tuple[Vertex, ...]:
    # Climb both BFS branches to their meeting point; the edge (u, w) plus
    # the two branch paths form a cycle of odd length.
    path_u = [u]
    while parent[path_u[-1]] is not None:
        path_u.append(parent[path_u[-1]])  # type: ignore[arg-type]
    index = {v: i for i, v in enumerate(path_u)}
    path_w = [w]
    while path_w[-1] not in index:
        path_w.append(parent[path_w[-1]])  # type: ignore[arg-type]
    meet = index[path_w[-1]]
    cycle = path_u[:meet + 1] + list(reversed(path_w[:-1]))
    assert len(cycle) % 2 == 1
    return tuple(cycle)


def girth(g: Graph) -> int | None:
    """Length of a shortest cycle, or None when the graph is acyclic.

    BFS from every vertex; any non-tree edge seen from a root bounds a cycle
    by dist(u) + dist(w) + 1, and the minimum over all roots is exact.  Once
    a bound is known, each search stops half a cycle out, which keeps this
    fast on large graphs of small girth.
    """
    best: int | None = None
    adj = g.adjacency
    for root in g.vertices:
        dist: dict[Vertex, int] = {root: 0}
        parent: dict[Vertex, Vertex | None] = {root: None}
        queue = deque([root])
        while queue:
            u = queue.popleft()
            if best is not None and dist[u] > (best - 1) // 2:
                break  # queue is ordered by depth, nothing shallower remains
            for w in adj[u]:
                if w not in dist:
                    dist[w] = dist[u] + 1
                    parent[w] = u
                    queue.append(w)
                elif w != parent[u]:
                    length = dist[u] + dist[w] + 1
                    if best is None or length < best:
                        best = length
    return best


def inductiveness(g: Graph) -> tuple[int, tuple[Vertex, ...]]:
    """Iterated minimum-degree deletion.

    Returns the smallest c such that deleting a minimum-degree vertex never
    removes one of degree above c, plus the deletion sequence reversed.  In
    the returned order every vertex has at most c neighbors among its
    predecessors.  Ties break to the smallest vertex identifier.
    """
    degree = {v: len(g.adjacency[v]) for v in g.vertices}
    heap = [(d, v) for v, d in degree.items()]
    heapify(heap)
    removed: set[Vertex] = set()
    deletion: list[Vertex] = []
    bound = 0
    while heap:
        d, v = heappop(heap)
        if v in removed or d != degree[v]:
            continue  # stale heap entry
        removed.add(v)
        deletion.append(v)
        bound = max(bound, d)
        for w in g.adjacency[v]:
            if w not in removed:
                degree[w] -= 1
                heappush(heap, (degree[w], w))
    return bound, tuple(reversed(deletion))


@dataclass(frozen=True)
class StructuralReport:
    """Everything the reduction's structural claims are stated in terms of."""

    vertex_count: int
    edge_count: int
    max_degree: int
    is_bipartite: bool
    partition: dict[Vertex, int] | None
    odd_cycle: tuple[Vertex, ...] | None
    girth: int | None
    inductiveness: int
    peel_order: tuple[Vertex, ...]

    def as_text(self) -> str:
        lines = [
            f"vertices {self.vertex_count}",
            f"edges {self.edge_count}",
            f"max-degree {self.max_degree}",
            f"bipartite {'yes' if self.is_bipartite else 'no'}",
        ]
        if self.odd_cycle is not None:
            lines.append("odd-cycle " + " ".join(self.odd_cycle))
        lines.append(f"girth {self.girth if self.girth is not None else 'acyclic'}")
        lines.append(f"inductiveness {self.inductiveness}")
        return "\n".join(lines) + "\n"


def structural_report(g: Graph) -> StructuralReport:
    """Run all structural probes and bundle the results."""
    parts = bipartition(g)
    bound, order = inductiveness(g)
    return StructuralReport(
        vertex_count=len(g.vertices),
        edge_count=len(g.edges),
        max_degree=g.max_degree,
        is_bipartite=parts.is_bipartite,
        partition=parts.classes,
        odd_cycle=parts.odd_cycle,
        girth=girth(g),
        inductiveness=bound,
        peel_order=order,
    )
