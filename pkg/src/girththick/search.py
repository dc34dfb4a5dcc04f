"""Budgeted backtracking search for girth-constrained planar edge partitions of K_n.

Edges of K_n are assigned in lexicographic order to one of ``parts`` classes.
Each class is kept as a table of adjacency bitmasks, which makes the exact
girth prune a pair of ball intersections: joining ``u`` and ``v`` closes a
cycle shorter than ``g`` iff they are already within distance ``g - 2``,
i.e. iff the radius ``ceil((g-2)/2)`` ball of ``u`` meets the radius
``floor((g-2)/2)`` ball of ``v``.
"""

from __future__ import annotations

import hashlib
import logging
import random
import time
from dataclasses import dataclass, field
from enum import Enum
from itertools import combinations
from typing import Optional

from .bounds import max_planar_size, theta_lower_bound
from .decomposition import Decomposition, verify_decomposition
from .errors import InvalidParameterError
from .graph import INFINITE, Edge, Girth, Graph
from .planarity import is_planar

log = logging.getLogger(__name__)


class SearchStatus(Enum):
    FOUND = "FOUND"
    EXHAUSTED = "EXHAUSTED"
    BUDGET = "BUDGET"


@dataclass(frozen=True)
class SearchProblem:
    n: int
    g: Girth
    parts: int
    budget_nodes: Optional[int] = None
    budget_secs: Optional[float] = None
    seed: int = 0
    prune_capacity: bool = True
    prune_girth: bool = True
    prune_planarity: bool = True
    prune_symmetry: bool = True
    #: domain look-ahead over the unassigned edges
    lookahead: bool = True
    #: commit edges whose look-ahead domain is a single class
    propagate: bool = True
    #: "lex" or "fail-first" (smallest look-ahead domain, ties lexicographic)
    edge_order: str = "lex"
    #: test planarity after every ``planarity_stride``-th growth of a class
    planarity_stride: int = 1
    #: base node slice for Luby restarts; ``None`` runs a single search
    restart_nodes: Optional[int] = None

    def __post_init__(self):
        if self.n < 1:
            raise InvalidParameterError(f"vertex count must be >= 1, got {self.n}")
        if self.parts < 1:
            raise InvalidParameterError(f"part count must be >= 1, got {self.parts}")
        max_planar_size(self.n, self.g)  # validates g
        if self.budget_nodes is not None and self.budget_nodes < 0:
            raise InvalidParameterError("node budget must be non-negative")
        if self.edge_order not in ("lex", "fail-first"):
            raise InvalidParameterError(f"unknown edge order {self.edge_order!r}")
        if self.planarity_stride < 1:
            raise InvalidParameterError("planarity stride must be >= 1")
        if self.restart_nodes is not None and self.restart_nodes < 1:
            raise InvalidParameterError("restart slice must be >= 1")

    @property
    def trivially_infeasible(self) -> bool:
        return self.parts < theta_lower_bound(self.n, self.g)


@dataclass
class SearchStats:
    nodes_expanded: int = 0
    prunes_by_girth: int = 0
    prunes_by_planarity: int = 0
    prunes_by_capacity: int = 0
    prunes_by_symmetry: int = 0
    leaf_rejections: int = 0
    restarts: int = 0
    elapsed: float = field(default=0.0, compare=False)

    def absorb(self, other: "SearchStats") -> None:
        for name in ("nodes_expanded", "prunes_by_girth", "prunes_by_planarity",
                     "prunes_by_capacity", "prunes_by_symmetry", "leaf_rejections"):
            setattr(self, name, getattr(self, name) + getattr(other, name))

    def digest(self) -> str:
        text = (
            f"{self.nodes_expanded}:{self.prunes_by_girth}:{self.prunes_by_planarity}:"
            f"{self.prunes_by_capacity}:{self.prunes_by_symmetry}:{self.leaf_rejections}:"
            f"{self.restarts}"
        )
        return hashlib.sha256(text.encode()).hexdigest()[:12]


@dataclass(frozen=True)
class SearchResult:
    status: SearchStatus
    decomposition: Optional[Decomposition]
    stats: SearchStats

    @property
    def found(self) -> bool:
        return self.status is SearchStatus.FOUND


class _OutOfBudget(Exception):
    pass


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class _Kernel:
    """Mutable search state; one instance per search call."""

    def __init__(self, p: SearchProblem, shuffle: Optional[random.Random] = None,
                 node_limit: Optional[int] = None, start: Optional[float] = None):
        self.p = p
        self.n = p.n
        self.edges: list[Edge] = list(combinations(range(p.n), 2))
        self.cap = max_planar_size(p.n, p.g) if p.prune_capacity else len(self.edges)
        if p.g == INFINITE:
            self.r1 = self.r2 = p.n
        else:
            self.r1 = (int(p.g) - 1) // 2  # ceil((g-2)/2)
            self.r2 = (int(p.g) - 2) // 2
        self.adj = [[0] * p.n for _ in range(p.parts)]
        self.size = [0] * p.parts
        self.emask = [0] * p.parts
        self.grown = [0] * p.parts
        self.assign = [-1] * len(self.edges)
        self.stats = SearchStats()
        self.rng = shuffle
        self.node_limit = node_limit
        self.planar_cache: dict[int, bool] = {}
        self.start = time.monotonic() if start is None else start
        # balls per class: radius r1 and r2 around every vertex
        self.ball1 = [[1 << v for v in range(p.n)] for _ in range(p.parts)]
        self.ball2 = [[1 << v for v in range(p.n)] for _ in range(p.parts)]

    # -- class geometry -------------------------------------------------

    def _ball(self, c: int, v: int, radius: int) -> int:
        adj = self.adj[c]
        reach = frontier = 1 << v
        for _ in range(radius):
            nxt = 0
            for x in _bits(frontier):
                nxt |= adj[x]
            frontier = nxt & ~reach
            if not frontier:
                break
            reach |= frontier
        return reach

    def _refresh_balls(self, c: int) -> None:
        self.ball1[c] = [self._ball(c, v, self.r1) for v in range(self.n)]
        if self.r2 == self.r1:
            self.ball2[c] = self.ball1[c]
        else:
            self.ball2[c] = [self._ball(c, v, self.r2) for v in range(self.n)]

    def _girth_ok(self, c: int, u: int, v: int) -> bool:
        return not (self.ball1[c][u] & self.ball2[c][v])

    def _planar(self, c: int) -> bool:
        key = self.emask[c]
        hit = self.planar_cache.get(key)
        if hit is None:
            part = frozenset(e for i, e in enumerate(self.edges) if key >> i & 1)
            hit = is_planar(Graph(self.n, part))
            self.planar_cache[key] = hit
        return hit

    # -- moves ----------------------------------------------------------

    def _place(self, idx: int, c: int):
        u, v = self.edges[idx]
        saved = (self.ball1[c], self.ball2[c])
        self.adj[c][u] |= 1 << v
        self.adj[c][v] |= 1 << u
        self.size[c] += 1
        self.emask[c] |= 1 << idx
        self.grown[c] += 1
        self.assign[idx] = c
        self._refresh_balls(c)
        return saved

    def _unplace(self, idx: int, c: int, saved) -> None:
        u, v = self.edges[idx]
        self.adj[c][u] &= ~(1 << v)
        self.adj[c][v] &= ~(1 << u)
        self.size[c] -= 1
        self.emask[c] &= ~(1 << idx)
        self.grown[c] -= 1
        self.assign[idx] = -1
        self.ball1[c], self.ball2[c] = saved

    def _unused(self) -> int:
        """Smallest class index with no edges, or -1."""
        for c in range(self.p.parts):
            if not self.size[c]:
                return c
        return -1

    def _domains(self) -> Optional[dict[int, list[int]]]:
        """Legal classes of every unassigned edge, or ``None`` on a wipe-out.

        Empty classes are interchangeable, so only the smallest of them is
        offered when symmetry breaking is on.
        """
        p, parts = self.p, self.p.parts
        fresh = self._unused() if p.prune_symmetry else -1
        room = [self.size[c] < self.cap for c in range(parts)]
        offered = [room[c] and (fresh < 0 or self.size[c] > 0 or c == fresh) for c in range(parts)]
        b1, b2 = self.ball1, self.ball2
        avail = [0] * parts
        domains: dict[int, list[int]] = {}
        for idx, (u, v) in enumerate(self.edges):
            if self.assign[idx] >= 0:
                continue
            dom = []
            for c in range(parts):
                if room[c] and (not p.prune_girth or not (b1[c][u] & b2[c][v])):
                    avail[c] += 1
                    if offered[c]:
                        dom.append(c)
            if not dom:
                self.stats.prunes_by_girth += 1
                return None
            domains[idx] = dom
        if p.prune_capacity:
            reach = sum(min(self.cap, self.size[c] + avail[c]) for c in range(parts))
            if reach < len(self.edges):
                self.stats.prunes_by_capacity += 1
                return None
        return domains

    def _try_place(self, idx: int, c: int, trail: list) -> bool:
        """Place edge ``idx`` in class ``c`` if capacity, girth and planarity allow."""
        p = self.p
        u, v = self.edges[idx]
        if self.size[c] >= self.cap:
            self.stats.prunes_by_capacity += 1
            return False
        if p.prune_girth and not self._girth_ok(c, u, v):
            self.stats.prunes_by_girth += 1
            return False
        trail.append((idx, c, self._place(idx, c)))
        if (
            p.prune_planarity
            and self.size[c] >= 9
            and self.grown[c] % p.planarity_stride == 0
            and not self._planar(c)
        ):
            self.stats.prunes_by_planarity += 1
            return False
        return True

    def _undo(self, trail: list) -> None:
        while trail:
            idx, c, saved = trail.pop()
            self._unplace(idx, c, saved)

    def _propagate(self, trail: list) -> Optional[dict[int, list[int]]]:
        """Look ahead and commit every edge left with a single legal class."""
        while True:
            domains = self._domains()
            if domains is None:
                return None
            forced = [(idx, dom[0]) for idx, dom in domains.items() if len(dom) == 1]
            if not forced or not self.p.propagate:
                return domains
            for idx, c in forced:
                if not self._try_place(idx, c, trail):
                    return None

    def _value_order(self, idx: int, domain: Optional[list[int]]) -> list[int]:
        u, _ = self.edges[idx]
        p = self.p
        candidates = list(range(p.parts)) if domain is None else list(domain)
        if p.prune_symmetry:
            fresh = self._unused()
            keep = [c for c in candidates if self.size[c] or c == fresh]
            if u == 0 and idx > 0:
                # edges at vertex 0 take non-decreasing classes (vertices 1..n-1 are interchangeable)
                prev = self.assign[idx - 1]
                keep = [c for c in keep if c >= prev]
            self.stats.prunes_by_symmetry += len(candidates) - len(keep)
            candidates = keep
        if self.rng is not None:
            self.rng.shuffle(candidates)
        return candidates

    def _check_budget(self) -> None:
        p, s = self.p, self.stats
        if self.node_limit is not None and s.nodes_expanded >= self.node_limit:
            raise _OutOfBudget
        if p.budget_secs is not None and s.nodes_expanded % 256 == 0:
            if time.monotonic() - self.start > p.budget_secs:
                raise _OutOfBudget

    def _leaf(self) -> Optional[Decomposition]:
        parts = [
            frozenset(e for i, e in enumerate(self.edges) if self.assign[i] == c)
            for c in range(self.p.parts)
        ]
        # every class must be used; K_1 alone decomposes into one empty part
        if any(not part for part in parts) and (self.edges or len(parts) > 1):
            self.stats.leaf_rejections += 1
            return None
        d = Decomposition(self.n, tuple(parts))
        if not verify_decomposition(d, self.p.g).overall:
            self.stats.leaf_rejections += 1
            return None
        return d

    def _next_edge(self, domains: Optional[dict[int, list[int]]]) -> int:
        row0 = self.n - 1
        for idx in range(row0):
            if self.assign[idx] < 0:
                return idx
        if domains and self.p.edge_order == "fail-first":
            return min(domains, key=lambda i: (len(domains[i]), i))
        for idx in range(row0, len(self.edges)):
            if self.assign[idx] < 0:
                return idx
        return -1

    def run(self, domains: Optional[dict[int, list[int]]] = None) -> Optional[Decomposition]:
        idx = self._next_edge(domains)
        if idx < 0:
            return self._leaf()
        self._check_budget()
        self.stats.nodes_expanded += 1
        lookahead = self.p.lookahead and idx >= self.n - 2
        for c in self._value_order(idx, domains.get(idx) if domains else None):
            trail: list = []
            sub = None
            if self._try_place(idx, c, trail):
                sub = self._propagate(trail) if lookahead else {}
            if sub is not None:
                found = self.run(sub or None)
                if found is not None:
                    return found
            self._undo(trail)
        return None


def _luby(i: int) -> int:
    """i-th term (from 1) of the Luby sequence 1, 1, 2, 1, 1, 2, 4, ..."""
    k = 1
    while (1 << k) - 1 < i:
        k += 1
    if i == (1 << k) - 1:
        return 1 << (k - 1)
    return _luby(i - (1 << (k - 1)) + 1)


def _attempt_rng(p: SearchProblem, attempt: int) -> Optional[random.Random]:
    if p.seed == 0 and attempt == 0:
        return None
    return random.Random(f"{p.seed}:{attempt}")


def search_decomposition(p: SearchProblem) -> SearchResult:
    """Search for a partition of E(K_n) into ``p.parts`` planar classes of girth >= ``p.g``.

    A returned decomposition has been re-checked by the independent
    verifier.  ``EXHAUSTED`` means the whole (symmetry-reduced) space was
    explored without success; ``BUDGET`` means the search stopped early.

    Seed 0 without restarts tries classes in ascending order.  A nonzero
    seed shuffles the value order at every node.  With ``restart_nodes``
    the search is rerun under fresh shuffles with node slices following
    the Luby sequence; an attempt that finishes inside its slice has
    explored the whole space, so EXHAUSTED stays a proof.
    """
    start = time.monotonic()
    total = SearchStats()
    if p.prune_capacity and p.trivially_infeasible:
        total.prunes_by_capacity += 1
        return SearchResult(SearchStatus.EXHAUSTED, None, total)
    found, status, attempt = None, SearchStatus.BUDGET, 0
    while True:
        left = None if p.budget_nodes is None else p.budget_nodes - total.nodes_expanded
        limit = left
        if p.restart_nodes is not None:
            slice_ = p.restart_nodes * _luby(attempt + 1)
            limit = slice_ if left is None else min(slice_, left)
        kernel = _Kernel(p, _attempt_rng(p, attempt), limit, start)
        try:
            found = kernel.run()
            status = SearchStatus.FOUND if found is not None else SearchStatus.EXHAUSTED
        except _OutOfBudget:
            status = SearchStatus.BUDGET
        total.absorb(kernel.stats)
        out_of_nodes = p.budget_nodes is not None and total.nodes_expanded >= p.budget_nodes
        out_of_time = p.budget_secs is not None and time.monotonic() - start > p.budget_secs
        if status is not SearchStatus.BUDGET or p.restart_nodes is None or out_of_nodes or out_of_time:
            break
        attempt += 1
        total.restarts += 1
    total.elapsed = time.monotonic() - start
    if found is not None:
        assert verify_decomposition(found, p.g).overall
    log.info("search %s: %s after %d nodes", p, status.value, total.nodes_expanded)
    return SearchResult(status, found, total)
