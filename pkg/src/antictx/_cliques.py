"""Maximal clique enumeration (Bron-Kerbosch with pivoting).

Deterministic for a fixed vertex numbering: candidates are visited in index
order and the pivot is the vertex with the most neighbours among the
remaining candidates (ties broken by index).
"""

from __future__ import annotations

from typing import Sequence


def maximal_cliques(n: int, adjacency: Sequence[set[int]]) -> list[tuple[int, ...]]:
    """All maximal cliques of the graph on vertices 0..n-1, sorted."""
    cliques: list[tuple[int, ...]] = []

    def expand(clique: list[int], candidates: set[int], excluded: set[int]) -> None:
        if not candidates and not excluded:
            cliques.append(tuple(sorted(clique)))
            return
        pivot = max(sorted(candidates | excluded), key=lambda u: len(adjacency[u] & candidates))
        for v in sorted(candidates - adjacency[pivot]):
            expand(clique + [v], candidates & adjacency[v], excluded & adjacency[v])
            candidates.remove(v)
            excluded.add(v)

    expand([], set(range(n)), set())
    return sorted(cliques)
