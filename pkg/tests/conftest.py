"""Shared fixtures and hypothesis strategies for the suite."""

from __future__ import annotations

import random
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings, strategies as st

from d2color.gadgets import Gadget, certify, parse_gadget
from d2color.graph import Graph, build_graph
from d2color.reduction import Literal, NaeInstance

settings.register_profile(
    "suite",
    deadline=None,
    max_examples=40,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("suite")

DATA_DIR = Path(__file__).resolve().parent.parent / "src" / "d2color" / "data"


# ---------------------------------------------------------------------------
# strategies

@st.composite
def small_graphs(draw, max_vertices: int = 8, max_edges: int = 8) -> Graph:
    """Connected-or-not simple graphs over a small labeled vertex pool."""
    n = draw(st.integers(min_value=2, max_value=max_vertices))
    pool = [f"v{i}" for i in range(n)]
    possible = [(pool[i], pool[j]) for i in range(n) for j in range(i + 1, n)]
    chosen = draw(st.lists(st.sampled_from(possible), min_size=1,
                           max_size=min(max_edges, len(possible)),
                           unique=True))
    return build_graph(chosen)


@st.composite
def nae_instances(draw, n_max: int = 4, m_max: int = 4) -> NaeInstance:
    n = draw(st.integers(min_value=1, max_value=n_max))
    m = draw(st.integers(min_value=0, max_value=m_max))
    lits = st.builds(Literal,
                     var=st.integers(min_value=1, max_value=n),
                     positive=st.booleans())
    clauses = draw(st.lists(st.tuples(lits, lits, lits),
                            min_size=m, max_size=m))
    return NaeInstance(num_vars=n, clauses=clauses)


# ---------------------------------------------------------------------------
# deterministic small-graph zoo for oracle comparisons

def path_graph(k: int) -> Graph:
    return build_graph((f"p{i}", f"p{i+1}") for i in range(k))


def cycle_graph(k: int) -> Graph:
    return build_graph((f"c{i}", f"c{(i+1) % k}") for i in range(k))


def star_graph(k: int) -> Graph:
    return build_graph(("hub", f"leaf{i}") for i in range(k))


def random_graph(rng: random.Random, max_edges: int = 8) -> Graph:
    n = rng.randint(2, 8)
    pool = [f"r{i}" for i in range(n)]
    possible = [(pool[i], pool[j]) for i in range(n) for j in range(i + 1, n)]
    rng.shuffle(possible)
    count = rng.randint(1, min(max_edges, len(possible)))
    return build_graph(possible[:count])


# ---------------------------------------------------------------------------
# fixtures

@pytest.fixture(scope="session")
def shipped_gadgets() -> dict[str, Gadget]:
    out: dict[str, Gadget] = {}
    for path in sorted(DATA_DIR.glob("*.gadget")):
        out[path.stem] = parse_gadget(path.read_text(encoding="utf-8"))
    assert set(out) == {"fanout_even", "fanout_odd", "variable", "clause"}
    return out


@pytest.fixture(scope="session")
def shipped_certs(shipped_gadgets):
    """Certification reports, shared session-wide (the clause one is slow)."""
    return {name: certify(gd) for name, gd in shipped_gadgets.items()}
