"""Shared fixtures and helpers for the test suite."""

from __future__ import annotations

import itertools
import random
from fractions import Fraction
from pathlib import Path

import networkx as nx
import pytest
from hypothesis import HealthCheck, settings

from prefgames import Graph, StubbornnessProfile

settings.register_profile(
    "suite",
    deadline=None,
    max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("suite")

FIXTURES = Path(__file__).parent / "fixtures"

# Rationals used across randomized sweeps; integer tolerances 0,1,1,2,3,9.
ALPHA_POOL = [
    Fraction(1, 3),
    Fraction(1, 2),
    Fraction(3, 5),
    Fraction(2, 3),
    Fraction(3, 4),
    Fraction(9, 10),
]


def profile_of(*alphas) -> StubbornnessProfile:
    return StubbornnessProfile([Fraction(a) for a in alphas])


def uniform_profile(n: int, alpha) -> StubbornnessProfile:
    return StubbornnessProfile([Fraction(alpha)] * n)


def path_graph(n: int) -> Graph:
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def complete_graph(n: int) -> Graph:
    return Graph(n, list(itertools.combinations(range(n), 2)))


def star_graph(n: int) -> Graph:
    return Graph(n, [(0, i) for i in range(1, n)])


def random_graph(n: int, p: float, rng: random.Random) -> Graph:
    edges = [
        (u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p
    ]
    return Graph(n, edges)


def random_profile(n: int, rng: random.Random) -> StubbornnessProfile:
    return StubbornnessProfile([rng.choice(ALPHA_POOL) for _ in range(n)])


def atlas_edge_lists(orders, connected_only=False):
    """All simple graphs of the given orders from the networkx atlas."""
    out = []
    for g in nx.graph_atlas_g():
        n = g.number_of_nodes()
        if n in orders and (not connected_only or (n > 0 and nx.is_connected(g))):
            out.append((n, sorted(tuple(sorted(e)) for e in g.edges())))
    return out


def all_big_sides(n: int):
    return itertools.combinations(range(n), (n + 1) // 2)


@pytest.fixture(scope="session")
def atlas_odd_all():
    """Every graph with n in {1,3,5,7}, disconnected included."""
    return atlas_edge_lists((1, 3, 5, 7))


@pytest.fixture(scope="session")
def atlas_odd_connected():
    """Every connected graph with n in {3,5,7}."""
    return atlas_edge_lists((3, 5, 7), connected_only=True)
