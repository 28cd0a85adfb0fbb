"""Shared fixtures and independent brute-force oracles.

The oracles deliberately use different algorithms from the library code
(bitmask DP over vertex subsets for matchings, pruned permutation
enumeration for cycles) so the two sides can check each other.
"""

from __future__ import annotations

import random
from functools import lru_cache
from itertools import combinations, permutations

import pytest

from cycleramsey.graphs import Graph


@pytest.fixture
def petersen() -> Graph:
    edges = (
        [(i, (i + 1) % 5) for i in range(5)]
        + [(i, i + 5) for i in range(5)]
        + [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    )
    return Graph(10, edges)


def random_graph(rng: random.Random, n: int, p: float) -> Graph:
    edges = [
        (u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p
    ]
    return Graph(n, edges)


def oracle_matching_size(g: Graph) -> int:
    """Maximum matching size by exhaustive subset DP (independent of blossom)."""
    adj = [g.adjacency_mask(v) for v in range(g.n)]

    @lru_cache(maxsize=None)
    def best(mask: int) -> int:
        if not mask:
            return 0
        v = (mask & -mask).bit_length() - 1
        out = best(mask & ~(1 << v))
        m = adj[v] & mask
        while m:
            b = m & -m
            w = b.bit_length() - 1
            m ^= b
            out = max(out, 1 + best(mask & ~(1 << v) & ~(1 << w)))
        return out

    result = best((1 << g.n) - 1)
    best.cache_clear()
    return result


def oracle_longest_cycle(g: Graph, parity: str = "any") -> int:
    """Maximum cycle length by permutation brute force (0 if acyclic).

    Enumerates vertex subsets by descending size; within a subset, fixes the
    smallest vertex first and walks permutations of the rest with early
    adjacency breaks, skipping each cycle's reflection.
    """
    want = {
        "any": (0, 1),
        "even": (0,),
        "odd": (1,),
    }[parity]
    verts = list(range(g.n))
    for k in range(g.n, 2, -1):
        if k % 2 not in want:
            continue
        for subset in combinations(verts, k):
            a = subset[0]
            rest = subset[1:]
            for perm in permutations(rest):
                if perm[0] > perm[-1]:
                    continue  # reflection
                if not g.has_edge(a, perm[0]) or not g.has_edge(perm[-1], a):
                    continue
                if all(g.has_edge(perm[i], perm[i + 1]) for i in range(k - 2)):
                    return k
    return 0


def oracle_deficiency(g: Graph) -> int:
    """max over S of (odd components of g-S) - |S|, by full enumeration."""
    best = 0
    for r in range(g.n + 1):
        for s_set in combinations(range(g.n), r):
            s_mask = 0
            for v in s_set:
                s_mask |= 1 << v
            rest = g.vertices_mask() & ~s_mask
            odd = 0
            unseen = rest
            while unseen:
                start = unseen & -unseen
                comp = start
                frontier = start
                while frontier:
                    grow = 0
                    m = frontier
                    while m:
                        b = m & -m
                        grow |= g.adjacency_mask(b.bit_length() - 1)
                        m ^= b
                    frontier = grow & rest & ~comp
                    comp |= frontier
                if comp.bit_count() % 2:
                    odd += 1
                unseen &= ~comp
            best = max(best, odd - r)
    return best
