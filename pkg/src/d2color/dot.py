"""Graphviz DOT rendering for eyeballing compiled graphs and colorings."""

from __future__ import annotations

from typing import Mapping

from .graph import Edge, Graph, bipartition

_SHAPES = ("ellipse", "box")


def _quote(ident: str) -> str:
    return '"' + ident.replace("\\", "\\\\").replace('"', '\\"') + '"'


def export_dot(g: Graph, coloring: Mapping[Edge, str] | None = None,
               name: str = "g") -> str:
    """Render the graph as undirected DOT text.

    Bipartition classes get distinct node shapes (class 0 ellipse, class 1
    box); a non-bipartite graph is rendered all-ellipse.  When a coloring is
    supplied its entries become edge labels.  Vertices and edges are emitted
    in sorted order, so equal inputs give byte-identical output.
    """
    parts = bipartition(g)
    classes = parts.classes if parts.classes is not None else {}
    lines = [f"graph {_quote(name)} {{"]
    for v in sorted(g.vertices):
        shape = _SHAPES[classes.get(v, 0)]
        lines.append(f"  {_quote(v)} [shape={shape}];")
    for u, v in sorted(g.edges):
        attrs = ""
        if coloring is not None and (u, v) in coloring:
            attrs = f" [label={_quote(coloring[(u, v)])}]"
        lines.append(f"  {_quote(u)} -- {_quote(v)}{attrs};")
    lines.append("}")
    return "\n".join(lines) + "\n"
