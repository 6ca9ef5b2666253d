"""Independent reference implementations used to cross-check the package.

Everything here goes through networkx so that agreement with the hand-rolled
code in src/ actually means something.  Keep these naive: clarity over speed.
"""

from __future__ import annotations

import itertools

import networkx as nx

from d2color.graph import Edge, Graph


def to_nx(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(g.vertices)
    h.add_edges_from(g.edges)
    return h


def nx_conflict_pairs(g: Graph) -> set[frozenset[Edge]]:
    """Distance-2 conflicting edge pairs via the square of the line graph."""
    if not g.edges:
        return set()
    sq = nx.power(nx.line_graph(to_nx(g)), 2)
    out: set[frozenset[Edge]] = set()
    for a, b in sq.edges():
        ea = tuple(sorted(a))
        eb = tuple(sorted(b))
        out.add(frozenset((ea, eb)))
    return out


def nx_is_bipartite(g: Graph) -> bool:
    return nx.is_bipartite(to_nx(g))


def nx_girth(g: Graph) -> int | None:
    h = to_nx(g)
    if nx.is_forest(h):
        return None
    got = nx.girth(h)
    return int(got)


def nx_degeneracy(g: Graph) -> int:
    h = to_nx(g)
    if h.number_of_nodes() == 0:
        return 0
    return max(nx.core_number(h).values(), default=0)


def valid_by_definition(g: Graph, coloring: dict[Edge, str]) -> bool:
    """Check a total coloring straight from the distance-2 definition."""
    if set(coloring) != set(g.edges):
        return False
    h = to_nx(g)
    for ea, eb in itertools.combinations(g.edges, 2):
        if coloring[ea] != coloring[eb]:
            continue
        if set(ea) & set(eb):
            return False
        if any(h.has_edge(u, v) for u in ea for v in eb):
            return False
    return True


def strong_index_by_enumeration(g: Graph, k_max: int = 6) -> int | None:
    """Smallest k admitting a valid k-coloring, by raw enumeration.

    Exponential; only call this on graphs with a handful of edges.
    """
    pairs = [tuple(sorted(p)) for p in nx_conflict_pairs(g)]
    edges = list(g.edges)
    for k in range(1, k_max + 1):
        for assign in itertools.product(range(k), repeat=len(edges)):
            coloring = dict(zip(edges, assign))
            if all(coloring[a] != coloring[b] for a, b in pairs):
                return k
    return None
