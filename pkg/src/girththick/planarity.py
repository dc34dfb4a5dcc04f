"""Planarity decisions and independent checks of their witnesses.

The decision itself is delegated to the left-right planarity test shipped
with networkx.  What comes back is never taken on faith by the certificate
path: a planar answer carries a rotation system whose face count is checked
against Euler's formula, and a non-planar answer carries a Kuratowski
subgraph that is checked to be a subdivision of K5 or K3,3.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Optional

import networkx as nx

from .graph import Edge, Graph, norm_edge


@dataclass(frozen=True)
class PlanarityWitness:
    planar: bool
    #: clockwise neighbour order around each vertex when planar
    rotation: Optional[dict[int, tuple[int, ...]]] = None
    #: edges of a K5 or K3,3 subdivision when not planar
    kuratowski: Optional[frozenset[Edge]] = None


def _to_nx(graph: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(graph.n))
    h.add_edges_from(graph.edges)
    return h


def is_planar(graph: Graph) -> bool:
    n, m = graph.n, len(graph.edges)
    if m < 9:
        # every non-planar graph contains a subdivision of K5 or K3,3
        return True
    if n >= 3 and m > 3 * n - 6:
        return False
    return nx.check_planarity(_to_nx(graph), counterexample=False)[0]


def planarity_witness(graph: Graph) -> PlanarityWitness:
    planar, cert = nx.check_planarity(_to_nx(graph), counterexample=True)
    if planar:
        rotation = {v: tuple(cert.neighbors_cw_order(v)) for v in range(graph.n)}
        return PlanarityWitness(True, rotation=rotation)
    return PlanarityWitness(False, kuratowski=frozenset(norm_edge(u, v) for u, v in cert.edges))


def check_rotation_system(graph: Graph, rotation: dict[int, tuple[int, ...]]) -> bool:
    """True iff ``rotation`` is a genus-zero embedding of ``graph``."""
    adj = graph.adjacency()
    succ: dict[int, dict[int, int]] = {}
    for v in range(graph.n):
        order = tuple(rotation.get(v, ()))
        if sorted(order) != sorted(adj[v]) or len(set(order)) != len(order):
            return False
        succ[v] = {order[j]: order[(j + 1) % len(order)] for j in range(len(order))}

    seen: set[tuple[int, int]] = set()
    faces = 0
    for u, v in graph.edges:
        for dart in ((u, v), (v, u)):
            if dart in seen:
                continue
            faces += 1
            a, b = dart
            while (a, b) not in seen:
                seen.add((a, b))
                a, b = b, succ[b][a]

    active = {x for e in graph.edges for x in e}
    components = _count_components(graph, active)
    return len(active) - len(graph.edges) + faces == 2 * components


def _count_components(graph: Graph, vertices: set[int]) -> int:
    parent = {v: v for v in vertices}

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in graph.edges:
        parent[find(u)] = find(v)
    return len({find(v) for v in vertices})


def check_kuratowski(graph: Graph, edges: frozenset[Edge]) -> bool:
    """True iff ``edges`` is a subgraph of ``graph`` subdividing K5 or K3,3."""
    if not edges or not edges <= graph.edges:
        return False
    deg = Counter(x for e in edges for x in e)
    if any(d < 2 for d in deg.values()):
        return False
    branch = sorted(v for v, d in deg.items() if d > 2)
    nbrs: dict[int, list[int]] = {v: [] for v in deg}
    for u, v in edges:
        nbrs[u].append(v)
        nbrs[v].append(u)

    # smooth the degree-2 vertices away, tracing each branch path
    used: set[Edge] = set()
    links: list[Edge] = []
    branch_set = set(branch)
    for b in branch:
        for first in nbrs[b]:
            if norm_edge(b, first) in used:
                continue
            prev, cur = b, first
            used.add(norm_edge(prev, cur))
            while cur not in branch_set:
                nxt = nbrs[cur][0] if nbrs[cur][0] != prev else nbrs[cur][1]
                prev, cur = cur, nxt
                used.add(norm_edge(prev, cur))
            if cur == b:
                return False
            links.append(norm_edge(b, cur))
    if used != set(edges) or len(set(links)) != len(links):
        return False

    if len(branch) == 5 and all(deg[v] == 4 for v in branch):
        return len(links) == 10
    if len(branch) == 6 and all(deg[v] == 3 for v in branch) and len(links) == 9:
        side = {branch[0]: 0}
        stack = [branch[0]]
        link_nbrs: dict[int, list[int]] = {v: [] for v in branch}
        for u, v in links:
            link_nbrs[u].append(v)
            link_nbrs[v].append(u)
        while stack:
            x = stack.pop()
            for y in link_nbrs[x]:
                if y not in side:
                    side[y] = 1 - side[x]
                    stack.append(y)
                elif side[y] == side[x]:
                    return False
        return len(side) == 6 and sum(side.values()) == 3
    return False


def check_witness(graph: Graph, witness: PlanarityWitness) -> bool:
    if witness.planar:
        return witness.rotation is not None and check_rotation_system(graph, witness.rotation)
    return witness.kuratowski is not None and check_kuratowski(graph, witness.kuratowski)
