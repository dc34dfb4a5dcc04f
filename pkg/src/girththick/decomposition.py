"""Edge partitions of K_n and the independent verifier."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import InvalidParameterError
from .graph import INFINITE, Edge, Girth, Graph, girth, norm_edge
from .planarity import is_planar


@dataclass(frozen=True)
class Decomposition:
    """Ordered edge sets over the vertices of K_n."""

    n: int
    parts: tuple[frozenset[Edge], ...]

    def __post_init__(self):
        for part in self.parts:
            for u, v in part:
                if not (0 <= u < v < self.n):
                    raise InvalidParameterError(f"edge {(u, v)} invalid for n={self.n}")

    @classmethod
    def from_parts(cls, n: int, parts: Iterable[Iterable[Sequence[int]]]) -> "Decomposition":
        return cls(n, tuple(frozenset(norm_edge(u, v) for u, v in part) for part in parts))

    def __len__(self) -> int:
        return len(self.parts)

    def part_graph(self, index: int) -> Graph:
        return Graph(self.n, self.parts[index])

    def graphs(self) -> list[Graph]:
        return [Graph(self.n, p) for p in self.parts]

    def edge_count(self) -> int:
        return sum(len(p) for p in self.parts)

    def delete_vertices(self, vertices: Iterable[int], drop_empty: bool = True) -> "Decomposition":
        """Induced decomposition of K_{n - |vertices|}, survivors relabelled in order."""
        graphs = [g.delete_vertices(vertices) for g in self.graphs()]
        n = graphs[0].n if graphs else self.n
        parts = [g.edges for g in graphs if g.edges or not drop_empty]
        if not parts:
            parts = [frozenset()]
        return Decomposition(n, tuple(parts))


@dataclass(frozen=True)
class PartReport:
    edge_count: int
    planar: bool
    girth: Girth


@dataclass(frozen=True)
class VerifyReport:
    partition_ok: bool
    per_part: tuple[PartReport, ...]
    overall: bool
    missing: int = 0
    repeated: int = 0

    def render(self, g: Girth) -> str:
        lines = [
            f"partition: {'ok' if self.partition_ok else 'FAILED'}"
            + ("" if self.partition_ok else f" (missing {self.missing}, repeated {self.repeated})")
        ]
        for i, p in enumerate(self.per_part):
            gir = "inf" if p.girth == INFINITE else str(p.girth)
            ok = p.planar and p.girth >= g
            lines.append(
                f"part {i}: edges={p.edge_count} planar={'yes' if p.planar else 'no'} "
                f"girth={gir} {'ok' if ok else 'FAIL'}"
            )
        lines.append(f"overall: {'PASS' if self.overall else 'FAIL'} (g={g})")
        return "\n".join(lines)


def verify_decomposition(d: Decomposition, g: Girth) -> VerifyReport:
    """Check that ``d`` partitions E(K_n) into planar parts of girth >= ``g``.

    Failures are reported in the returned record, never raised.
    """
    counts = Counter(e for part in d.parts for e in part)
    total = d.n * (d.n - 1) // 2
    repeated = sum(c - 1 for c in counts.values() if c > 1)
    missing = total - len(counts)
    partition_ok = repeated == 0 and missing == 0

    per_part = []
    for part in d.parts:
        graph = Graph(d.n, part)
        per_part.append(PartReport(len(part), is_planar(graph), girth(graph)))
    overall = partition_ok and all(p.planar and p.girth >= g for p in per_part)
    return VerifyReport(partition_ok, tuple(per_part), overall, missing, repeated)
