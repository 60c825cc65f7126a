from fractions import Fraction
from itertools import combinations

import numpy as np
import pytest
from hypothesis import strategies as st

from densub.corpus import verification_corpus
from densub.graph import Graph


def naive_densest(g):
    """Itertools + Fraction enumeration, independent of densub.exact.

    Returns (best density as Fraction, set of all maximum-density subsets).
    """
    w = {}
    for u, v, x in zip(g.edges_u, g.edges_v, g.weights):
        w[(int(u), int(v))] = Fraction(float(x))
    best, winners = Fraction(-1), []
    for k in range(1, g.n_nodes + 1):
        for s in combinations(range(g.n_nodes), k):
            ss = set(s)
            dens = sum((x for (u, v), x in w.items() if u in ss and v in ss), Fraction(0)) / k
            if dens > best:
                best, winners = dens, [frozenset(s)]
            elif dens == best:
                winners.append(frozenset(s))
    return best, winners


def k_core(g, k):
    """Maximal subgraph with every induced degree >= k, by repeated deletion."""
    alive = set(range(g.n_nodes))
    adj = {v: set(int(x) for x in g.neighbors(v)) for v in alive}
    changed = True
    while changed:
        changed = False
        for v in sorted(alive):
            if len(adj[v] & alive) < k:
                alive.discard(v)
                changed = True
    return frozenset(alive)


@st.composite
def graphs(draw, min_nodes=2, max_nodes=9, weighted=None):
    """Random small graphs with at least one edge."""
    n = draw(st.integers(min_nodes, max_nodes))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), min_size=1, max_size=len(pairs), unique=True))
    if weighted is None:
        weighted = draw(st.booleans())
    w = None
    if weighted:
        w = draw(st.lists(st.floats(0.05, 2.0), min_size=len(chosen), max_size=len(chosen)))
    return Graph.from_edges(np.array(chosen), w, n_nodes=n)


@pytest.fixture(scope="session")
def corpus():
    return verification_corpus(seed=0, count=240)


@pytest.fixture(scope="session")
def unweighted_corpus(corpus):
    return [(name, g) for name, g in corpus if g.is_unweighted]


ACCEPTANCE_LINES = []


@pytest.fixture
def report(capsys):
    """Record a one-line acceptance verdict; echoed again in the terminal summary."""

    def _report(criterion, ok, detail=""):
        line = f"criterion {criterion:>2}: {'PASS' if ok else 'FAIL'}  {detail}".rstrip()
        ACCEPTANCE_LINES.append(line)
        with capsys.disabled():
            print("\n" + line)
        return ok

    return _report


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
