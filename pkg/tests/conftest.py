"""Shared corpus builders for the test suite (all seeded, all deterministic)."""

from __future__ import annotations

import random
from itertools import combinations

import pytest

from kbroadcast import Graph, random_tree


def random_connected_graph(rng: random.Random, n: int, extra: int | None = None) -> Graph:
    """A random labeled tree plus ``extra`` random chords; always connected."""
    edges = {tuple(sorted((v, rng.randrange(v)))) for v in range(1, n)}
    pool = [e for e in combinations(range(n), 2) if e not in edges]
    rng.shuffle(pool)
    if extra is None:
        extra = rng.randrange(0, max(1, n - 1))
    edges.update(pool[:extra])
    return Graph(n, edges)


def random_tree_graph(rng: random.Random, n: int) -> Graph:
    return random_tree(n, rng.randrange(2**30))


@pytest.fixture
def rng() -> random.Random:
    return random.Random(0xC0FFEE)
