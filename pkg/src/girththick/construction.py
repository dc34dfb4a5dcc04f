"""Explicit planar decompositions of K_6k and girth-6 refinements for K_6k, K_6k+3.

Vertex layout for half-order ``k``: ``u_j -> j-1``, ``v_j -> 2k+j-1``,
``w_j -> 4k+j-1`` (``j`` a residue in ``1..2k``), and for K_6k+3 the apexes
``u, v, w -> 6k, 6k+1, 6k+2``.

Each maximal planar part G_i is an octahedron on the hubs
``{u_i, u_{i+k}, v_i, v_{i+k}, w_i, w_{i+k}}`` with one half path of the
Hamiltonian factorization nested in each of six faces.  The two hub triangles
``u_i v_i w_i`` and ``u_{i+k} v_{i+k} w_{i+k}`` are the faces left empty.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional

from .bounds import ThetaResult, theta6_value
from .decomposition import Decomposition, verify_decomposition
from .errors import ConstructionFailedError, InvalidParameterError, UnsupportedOrderError
from .factorization import block_factorize, leaf_offset, split_at_center
from .graph import Edge, Graph, girth, norm_edge

log = logging.getLogger(__name__)

GROUPS = ("u", "v", "w")
_NEXT = {"u": "v", "v": "w", "w": "u"}
_PREV = {"u": "w", "v": "u", "w": "v"}


class Tag(Enum):
    OCTAHEDRON = "OCTAHEDRON"
    PATH_EDGE = "PATH_EDGE"
    SPOKE = "SPOKE"
    MATCHING = "MATCHING"
    TRIANGLE_READDED = "TRIANGLE_READDED"
    APEX_EDGE = "APEX_EDGE"
    STEP4_PRISM = "STEP4_PRISM"


@dataclass(frozen=True)
class VertexLayout:
    k: int

    def vertex(self, group: str, j: int) -> int:
        """Linear label of ``x_j`` for group ``x`` and residue ``j`` (any integer)."""
        return 2 * self.k * GROUPS.index(group) + (j - 1) % (2 * self.k)

    def apex(self, group: str) -> int:
        return 6 * self.k + GROUPS.index(group)

    def name(self, label: int) -> str:
        if label >= 6 * self.k:
            return GROUPS[label - 6 * self.k]
        g, r = divmod(label, 2 * self.k)
        return f"{GROUPS[g]}_{r + 1}"


@dataclass
class ConstructionTrace:
    """Provenance of every edge, per output part."""

    tags: list[dict[Edge, Tag]] = field(default_factory=list)
    #: per part, which rule produced its edge colouring
    rules: list[str] = field(default_factory=list)

    def count(self, tag: Tag) -> list[int]:
        return [sum(1 for t in part.values() if t is tag) for part in self.tags]


@dataclass(frozen=True)
class Face:
    """An octahedron face holding one half path.

    ``path`` runs from the far leaf f(a) back to the face corner ``a``;
    ``anchor`` is the hub whose spoke from f(a) carries the path's own colour.
    """

    path: tuple[int, ...]
    anchor: int
    other: int
    colour: int


@dataclass(frozen=True)
class ThicknessPart:
    """G_i before and after the girth-6 preparation, with its faces."""

    k: int
    i: int
    edges: dict[Edge, Tag]
    faces: tuple[Face, ...]
    low_triangle: tuple[int, int, int]
    high_triangle: tuple[int, int, int]


def _thickness_part(k: int, i: int) -> ThicknessPart:
    lay = VertexLayout(k)
    pf = block_factorize(k)
    halves = split_at_center(pf, i)
    edges: dict[Edge, Tag] = {}

    hubs = {(x, s): lay.vertex(x, i + s * k) for x in GROUPS for s in (0, 1)}
    for (x, s), a in hubs.items():
        for (y, t), b in hubs.items():
            if x < y:
                edges[norm_edge(a, b)] = Tag.OCTAHEDRON

    faces = []
    for x in GROUPS:
        for s, half in ((0, halves.p_low), (1, halves.p_high)):
            path = [lay.vertex(x, t + 1) for t in half]
            # face of P_{x_i} is (x_i, next_{i+k}, prev_{i+k}); of P_{x_{i+k}}, (x_{i+k}, next_i, prev_i)
            b, c = hubs[(_NEXT[x], 1 - s)], hubs[(_PREV[x], 1 - s)]
            for p, q in zip(path, path[1:]):
                edges[norm_edge(p, q)] = Tag.PATH_EDGE
            for p in path[1:]:
                edges[norm_edge(p, b)] = Tag.SPOKE
                edges[norm_edge(p, c)] = Tag.SPOKE
            faces.append(Face(tuple(reversed(path)), b, c, 1 + s))

    low = tuple(hubs[(x, 0)] for x in GROUPS)
    high = tuple(hubs[(x, 1)] for x in GROUPS)
    return ThicknessPart(k, i, edges, tuple(faces), low, high)


def _matching(k: int) -> dict[Edge, Tag]:
    lay = VertexLayout(k)
    return {
        norm_edge(lay.vertex(x, j), lay.vertex(x, j + k)): Tag.MATCHING
        for x in GROUPS
        for j in range(1, k + 1)
    }


def _check_k(k: int) -> None:
    if k <= 1:
        raise UnsupportedOrderError(f"the construction needs half-order k >= 2, got {k}")


def build_thickness_parts(k: int, trace: Optional[ConstructionTrace] = None) -> Decomposition:
    """G_1..G_k and the matching G_{k+1}: a planar decomposition of K_6k."""
    _check_k(k)
    tagged = [_thickness_part(k, i).edges for i in range(1, k + 1)] + [_matching(k)]
    if trace is not None:
        trace.tags.extend(tagged)
        trace.rules.extend(["octahedron"] * k + ["matching"])
    return Decomposition(6 * k, tuple(frozenset(t) for t in tagged))


def _triangle_edges(tri: tuple[int, int, int]) -> list[Edge]:
    a, b, c = tri
    return [norm_edge(a, b), norm_edge(b, c), norm_edge(a, c)]


def _rule_colouring(part: ThicknessPart) -> dict[Edge, int]:
    """Alternating two-colouring of G_i minus its hub triangles.

    Walking each half path from its far leaf back to the octahedron corner,
    path edges and anchor spokes alternate starting with the path's own
    colour, and the second spoke of every vertex takes the other colour.
    """
    colour: dict[Edge, int] = {}

    def put(e: Edge, c: int) -> None:
        if colour.setdefault(e, c) != c:
            raise ConstructionFailedError(f"alternation rule conflicts on edge {e}")

    for face in part.faces:
        own, other = face.colour, 3 - face.colour
        for m, q in enumerate(face.path):
            first = own if m % 2 == 0 else other
            if m + 1 < len(face.path):
                put(norm_edge(q, face.path[m + 1]), first)
            put(norm_edge(q, face.anchor), first)
            put(norm_edge(q, face.other), 3 - first)
    return colour


def _fixed_colours(part: ThicknessPart) -> dict[Edge, int]:
    """Edges whose class is prescribed: far-end path matchings and the six anchors."""
    fixed: dict[Edge, int] = {}
    for face in part.faces:
        p = face.path
        for m in range(0, len(p) - 1, 2):
            fixed[norm_edge(p[m], p[m + 1])] = face.colour
        if face.colour == 1:
            fixed[norm_edge(p[0], face.anchor)] = 1
            fixed[norm_edge(p[0], face.other)] = 2
    return fixed


def _close_within(adj: dict[int, set[int]], u: int, v: int, limit: int) -> bool:
    """True iff ``v`` is reachable from ``u`` in at most ``limit`` steps."""
    frontier, seen = {u}, {u}
    for _ in range(limit):
        frontier = {y for x in frontier for y in adj.get(x, ()) if y not in seen}
        if v in frontier:
            return True
        if not frontier:
            return False
        seen |= frontier
    return False


def _repair_colouring(
    edges: list[Edge],
    extra: tuple[dict[Edge, int], ...],
    fixed: dict[Edge, int],
    preferred: dict[Edge, int],
    g: int,
    budget: int,
) -> Optional[dict[Edge, int]]:
    """Backtracking two-colouring with every class of girth >= ``g``.

    ``extra`` holds edges already committed to classes 1 and 2 by later
    construction steps.  Returns ``None`` once ``budget`` nodes are spent.
    """
    adj: tuple[dict[int, set[int]], ...] = ({}, {})
    placed: dict[Edge, int] = {}

    def add(e: Edge, c: int) -> bool:
        u, v = e
        a = adj[c - 1]
        if _close_within(a, u, v, g - 2):
            return False
        a.setdefault(u, set()).add(v)
        a.setdefault(v, set()).add(u)
        placed[e] = c
        return True

    def remove(e: Edge) -> None:
        u, v = e
        a = adj[placed.pop(e) - 1]
        a[u].discard(v)
        a[v].discard(u)

    for side in extra:
        for e, c in side.items():
            if not add(e, c):
                return None
    for e, c in fixed.items():
        if not add(e, c):
            return None
    free = [e for e in edges if e not in fixed]
    nodes = 0

    def go(idx: int) -> bool:
        nonlocal nodes
        if idx == len(free):
            return True
        nodes += 1
        if nodes > budget:
            return False
        e = free[idx]
        first = preferred.get(e, 1)
        for c in (first, 3 - first):
            if add(e, c):
                if go(idx + 1):
                    return True
                remove(e)
        return False

    if not go(0):
        return None
    return {e: placed[e] for e in edges}


def _split_part(
    part: ThicknessPart,
    extra: dict[Edge, int],
    g: int = 6,
    budget: int = 2_000_000,
) -> tuple[dict[Edge, int], str]:
    """Colour the non-triangle edges of ``part`` so both classes, with ``extra``, have girth >= g."""
    removed = set(_triangle_edges(part.low_triangle) + _triangle_edges(part.high_triangle))
    edges = sorted(e for e in part.edges if e not in removed)
    by_class = tuple({e: c for e, c in extra.items() if c == cls} for cls in (1, 2))

    try:
        colour = _rule_colouring(part)
    except ConstructionFailedError:
        colour = None
    if colour is not None:
        ok = all(
            girth(Graph.from_edges(6 * part.k + 3, [e for e, c in colour.items() if c == cls] + list(by_class[cls - 1])))
            >= g
            for cls in (1, 2)
        )
        if ok:
            return colour, "alternation"
        log.info("alternation rule left a short cycle in G_%d; repairing", part.i)

    fixed = _fixed_colours(part)
    bfs_order = sorted(edges, key=lambda e: (e not in fixed, e))
    repaired = _repair_colouring(bfs_order, by_class, fixed, colour or {}, g, budget)
    if repaired is None:
        raise ConstructionFailedError(
            f"no valid two-colouring of G_{part.i} found within budget",
            part=frozenset(part.edges),
        )
    return repaired, "backtracking"


def _far(lay: VertexLayout, x: str, j: int) -> int:
    """Stored label of f(x_j)."""
    return lay.vertex(x, j + leaf_offset(block_factorize(lay.k)))


def _case1_chords(lay: VertexLayout, i: int) -> dict[Edge, int]:
    k, f = lay.k, _far
    return {
        norm_edge(f(lay, "v", i + k), f(lay, "u", i + k)): 1,
        norm_edge(f(lay, "u", i + k), f(lay, "w", i + k)): 1,
        norm_edge(f(lay, "w", i), f(lay, "v", i)): 2,
        norm_edge(f(lay, "v", i), f(lay, "u", i)): 2,
    }


def _case2_apex_edges(lay: VertexLayout, i: int) -> dict[Edge, int]:
    k, f, x, a = lay.k, _far, lay.vertex, lay.apex
    return {
        norm_edge(a("u"), x("w", i)): 1,
        norm_edge(a("u"), f(lay, "v", i + k)): 1,
        norm_edge(a("v"), x("u", i)): 1,
        norm_edge(a("v"), f(lay, "w", i + k)): 1,
        norm_edge(a("w"), x("v", i)): 1,
        norm_edge(a("w"), f(lay, "u", i + k)): 1,
        norm_edge(a("u"), x("w", i + k)): 2,
        norm_edge(a("u"), f(lay, "v", i)): 2,
        norm_edge(a("v"), x("u", i + k)): 2,
        norm_edge(a("v"), f(lay, "w", i)): 2,
        norm_edge(a("w"), x("v", i + k)): 2,
        norm_edge(a("w"), f(lay, "u", i)): 2,
    }


def _split_all(k: int, extras: list[dict[Edge, int]], extra_tag: Tag):
    parts: list[dict[Edge, Tag]] = []
    rules: list[str] = []
    for i in range(1, k + 1):
        part = _thickness_part(k, i)
        colour, rule = _split_part(part, extras[i - 1])
        for cls in (1, 2):
            tagged = {e: part.edges[e] for e, c in colour.items() if c == cls}
            tagged.update({e: extra_tag for e, c in extras[i - 1].items() if c == cls})
            parts.append(tagged)
            rules.append(rule)
    return parts, rules


def split_case_6k(k: int, trace: Optional[ConstructionTrace] = None) -> Decomposition:
    """Girth-6 planar decomposition of K_6k into 2k+1 parts.

    Output order: H_1^1, H_1^2, ..., H_k^1, H_k^2, H_{k+1}.
    """
    _check_k(k)
    lay = VertexLayout(k)
    chords = [_case1_chords(lay, i) for i in range(1, k + 1)]
    parts, rules = _split_all(k, chords, Tag.TRIANGLE_READDED)

    readded = {e for c in chords for e in c}
    last: dict[Edge, Tag] = dict(_matching(k))
    for i in range(1, k + 1):
        part = _thickness_part(k, i)
        for e in _triangle_edges(part.low_triangle) + _triangle_edges(part.high_triangle):
            if e not in readded:
                last[e] = Tag.TRIANGLE_READDED
    parts.append(last)
    rules.append("paths")
    if trace is not None:
        trace.tags.extend(parts)
        trace.rules.extend(rules)
    return Decomposition(6 * k, tuple(frozenset(p) for p in parts))


def _step4_parts(lay: VertexLayout) -> tuple[dict[Edge, Tag], dict[Edge, Tag]]:
    k, x, a = lay.k, lay.vertex, lay.apex
    one = [(a("v"), a("w"))]
    two = [(a("u"), a("v")), (a("u"), a("w"))]
    for j in range(1, k + 1):
        one += [
            (a("v"), x("v", j + k)),
            (a("w"), x("w", j)),
            (a("w"), x("w", j + k)),
            (a("u"), x("u", j + k)),
            (x("v", j + k), x("v", j)),
            (x("v", j), x("u", j)),
            (x("u", j), x("w", j)),
            (x("w", j + k), x("u", j + k)),
        ]
        two += [
            (a("v"), x("v", j)),
            (a("u"), x("u", j)),
            (x("u", j), x("u", j + k)),
            (x("u", j + k), x("v", j + k)),
            (x("v", j + k), x("w", j + k)),
            (x("w", j + k), x("w", j)),
            (x("w", j), x("v", j)),
        ]
    return (
        {norm_edge(*e): Tag.STEP4_PRISM for e in one},
        {norm_edge(*e): Tag.STEP4_PRISM for e in two},
    )


def split_case_6k3(k: int, trace: Optional[ConstructionTrace] = None) -> Decomposition:
    """Girth-6 planar decomposition of K_{6k+3} into 2k+2 parts.

    Output order: H_1^1, H_1^2, ..., H_k^1, H_k^2, H_{k+1}^1, H_{k+1}^2.
    """
    _check_k(k)
    lay = VertexLayout(k)
    apex = [_case2_apex_edges(lay, i) for i in range(1, k + 1)]
    parts, rules = _split_all(k, apex, Tag.APEX_EDGE)
    parts.extend(_step4_parts(lay))
    rules.extend(["prism", "prism"])
    if trace is not None:
        trace.tags.extend(parts)
        trace.rules.extend(rules)
    return Decomposition(6 * k + 3, tuple(frozenset(p) for p in parts))


@dataclass(frozen=True)
class Plan:
    """How ``decompose`` realises K_n: a source and a number of deleted top vertices."""

    source: str  # "certificate", "6k" or "6k+3"
    parent: int
    deletions: int
    parts: int


_CERT_PARENT = {1: (2, 1), 2: (2, 1), 3: (4, 2), 4: (4, 2), 5: (7, 3), 6: (7, 3), 7: (7, 3), 8: (10, 4), 9: (10, 4), 10: (10, 4)}


def plan(n: int) -> Plan:
    if n <= 0:
        raise InvalidParameterError(f"vertex count must be >= 1, got {n}")
    if n <= 10:
        parent, parts = _CERT_PARENT[n]
        return Plan("certificate", parent, parent - n, parts)
    r = n % 6
    if r in (0, 5, 4):
        k = -(-n // 6)
        return Plan("6k", 6 * k, 6 * k - n, 2 * k + 1)
    k = (n - 3) // 6 if r == 3 else (n - 1) // 6 if r == 1 else (n - 2) // 6
    return Plan("6k+3", 6 * k + 3, 6 * k + 3 - n, 2 * k + 2)


def parent_decomposition(p: Plan, trace: Optional[ConstructionTrace] = None) -> tuple[Decomposition, str]:
    if p.source == "6k":
        return split_case_6k(p.parent // 6, trace), "CONSTRUCTED_6K"
    if p.source == "6k+3":
        return split_case_6k3((p.parent - 3) // 6, trace), "CONSTRUCTED_6K3"
    from .certificate import load_small_certificate

    cert = load_small_certificate(p.parent)
    return cert.decomposition(), cert.provenance.render()


def decompose(
    n: int, check: bool = True, trace: Optional[ConstructionTrace] = None
) -> tuple[Decomposition, ThetaResult, str]:
    """A girth-6 planar decomposition of K_n, its theta status and provenance.

    Orders without their own construction are cut down from the plan's
    parent by deleting the highest-numbered vertices.  ``trace`` describes
    the parent before any deletion.
    """
    p = plan(n)
    d, provenance = parent_decomposition(p, trace)
    if p.deletions:
        d = d.delete_vertices(range(p.parent - p.deletions, p.parent))
        provenance = "HEREDITARY"
    if check:
        report = verify_decomposition(d, 6)
        if not report.overall:
            raise ConstructionFailedError(f"decomposition of K_{n} failed verification")
    return d, theta6_value(n), provenance
