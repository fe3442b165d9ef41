"""Shared corpus helpers.

The exhaustive small-graph sweeps come from the networkx atlas, which is a
test-only dependency; the library itself never imports it.
"""

import random

import networkx as nx
import pytest

from zvsearch.graphs import Graph


def from_networkx(ng):
    """Relabel a networkx graph into ours, keeping isolated vertices."""
    return Graph.from_edges(
        ((f"v{u}", f"v{v}") for u, v in ng.edges()),
        vertices=(f"v{u}" for u in ng.nodes()),
    )


def connected_atlas(lo, hi):
    """All connected graphs with lo..hi vertices, one per isomorphism class."""
    out = []
    for ng in nx.graph_atlas_g():
        if lo <= ng.number_of_nodes() <= hi and nx.is_connected(ng):
            out.append(from_networkx(ng))
    return out


def all_trees(lo, hi):
    out = []
    for n in range(lo, hi + 1):
        out.extend(from_networkx(t) for t in nx.nonisomorphic_trees(n))
    return out


def random_connected(n, rng):
    while True:
        ng = nx.gnp_random_graph(n, rng.uniform(0.25, 0.7), seed=rng.randint(0, 2**31))
        if nx.is_connected(ng):
            return from_networkx(ng)


@pytest.fixture(scope="session")
def atlas_2_6():
    return connected_atlas(2, 6)


@pytest.fixture(scope="session")
def atlas_2_7():
    return connected_atlas(2, 7)


@pytest.fixture
def rng():
    return random.Random(0x5eed)
