"""Descendant sets of indexes: reachability in the graph ``i -> j`` iff ``w_ji != 0``."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable

from .algebra import EvolutionAlgebra
from .errors import InvalidInputError


@dataclass(frozen=True)
class DescentGraph:
    n: int
    out_edges: tuple[frozenset[int], ...]  # out_edges[i - 1] = D^1(i)

    @classmethod
    def from_algebra(cls, A: EvolutionAlgebra) -> DescentGraph:
        return cls(A.n, tuple(frozenset(k for k, _ in col) for col in A.columns))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> DescentGraph:
        out = [set() for _ in range(n)]
        for i, j in edges:
            out[i - 1].add(j)
        return cls(n, tuple(frozenset(s) for s in out))

    def _check(self, i: int) -> None:
        if not 1 <= i <= self.n:
            raise InvalidInputError(f"index {i} out of range 1..{self.n}")


@lru_cache(maxsize=256)
def descent_graph(A: EvolutionAlgebra) -> DescentGraph:
    return DescentGraph.from_algebra(A)


def first_generation(G: DescentGraph, i: int) -> frozenset[int]:
    G._check(i)
    return G.out_edges[i - 1]


def _step(G: DescentGraph, frontier: Iterable[int]) -> frozenset[int]:
    out: set[int] = set()
    for j in frontier:
        out |= G.out_edges[j - 1]
    return frozenset(out)


def nth_generation(G: DescentGraph, i: int, m: int) -> frozenset[int]:
    """Endpoints of walks of length exactly ``m`` starting at ``i``."""
    G._check(i)
    if m < 1:
        raise InvalidInputError("generations are numbered from 1")
    current = G.out_edges[i - 1]
    for _ in range(m - 1):
        if not current:
            break
        current = _step(G, current)
    return current


def descendants(G: DescentGraph, i: int) -> frozenset[int]:
    """All indexes reachable from ``i`` by a walk of length >= 1.

    ``i`` itself belongs to the result only when it lies on a cycle.
    """
    G._check(i)
    seen: set[int] = set()
    frontier = set(G.out_edges[i - 1])
    while frontier:
        seen |= frontier
        frontier = set(_step(G, frontier)) - seen
    return frozenset(seen)


def descendants_of_set(G: DescentGraph, S: Iterable[int]) -> frozenset[int]:
    out: set[int] = set()
    for i in S:
        out |= descendants(G, i)
    return frozenset(out)
