"""Simple undirected graphs on the vertex range ``0..n-1`` and their girth."""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Union

from .errors import InvalidParameterError

Edge = tuple[int, int]

#: Girth of an acyclic graph.
INFINITE = math.inf

Girth = Union[int, float]


def norm_edge(u: int, v: int) -> Edge:
    """Return the edge ``uv`` with the smaller endpoint first."""
    if u == v:
        raise InvalidParameterError(f"self-loop at vertex {u}")
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    """A finite simple graph with vertices ``0..n-1``."""

    n: int
    edges: frozenset[Edge]

    def __post_init__(self):
        if self.n < 0:
            raise InvalidParameterError(f"negative vertex count {self.n}")
        for u, v in self.edges:
            if not (0 <= u < v < self.n):
                raise InvalidParameterError(f"edge {(u, v)} invalid for n={self.n}")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Iterable[int]]) -> "Graph":
        normed = set()
        for u, v in edges:
            e = norm_edge(u, v)
            if e in normed:
                raise InvalidParameterError(f"duplicate edge {e}")
            normed.add(e)
        return cls(n, frozenset(normed))

    def __len__(self) -> int:
        return len(self.edges)

    def adjacency(self) -> list[list[int]]:
        adj: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in sorted(self.edges):
            adj[u].append(v)
            adj[v].append(u)
        return adj

    def degree(self, v: int) -> int:
        return sum(1 for e in self.edges if v in e)

    def delete_vertices(self, vertices: Iterable[int]) -> "Graph":
        """Delete ``vertices`` and relabel the survivors order-preservingly."""
        gone = set(vertices)
        keep = [v for v in range(self.n) if v not in gone]
        relabel = {v: i for i, v in enumerate(keep)}
        edges = frozenset(
            (relabel[u], relabel[v]) for u, v in self.edges if u not in gone and v not in gone
        )
        return Graph(len(keep), edges)

    def sorted_edges(self) -> list[Edge]:
        return sorted(self.edges)


def complete_graph(n: int) -> Graph:
    if n < 0:
        raise InvalidParameterError(f"negative vertex count {n}")
    return Graph(n, frozenset(combinations(range(n), 2)))


def complete_bipartite_graph(a: int, b: int) -> Graph:
    return Graph(a + b, frozenset((i, a + j) for i in range(a) for j in range(b)))


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise InvalidParameterError("a cycle needs at least 3 vertices")
    return Graph.from_edges(n, ((i, (i + 1) % n) for i in range(n)))


def girth(graph: Graph) -> Girth:
    """Length of a shortest cycle, or :data:`INFINITE` for a forest.

    A breadth-first search from every vertex; each non-tree edge ``xy`` met
    from root ``r`` closes a closed walk of length ``d(x) + d(y) + 1`` that
    contains a cycle at most that long, and the minimum over all roots is
    attained by a shortest cycle.
    """
    adj = graph.adjacency()
    best: Girth = INFINITE
    for root in range(graph.n):
        dist = [-1] * graph.n
        parent = [-1] * graph.n
        dist[root] = 0
        queue = deque([root])
        while queue:
            x = queue.popleft()
            if 2 * dist[x] + 1 >= best:
                break
            for y in adj[x]:
                if dist[y] < 0:
                    dist[y] = dist[x] + 1
                    parent[y] = x
                    queue.append(y)
                elif y != parent[x]:
                    best = min(best, dist[x] + dist[y] + 1)
    return best
