"""Cyclic factorizations of K_2k into k Hamiltonian paths.

Vertex ``x_j`` (residue ``j`` in ``1..2k``) is stored as the integer ``j - 1``;
path indices ``i`` stay 1-based as in the usual statement of the
factorization.

Two factorizations live here.  :func:`factorize` is the classical zigzag
x_i, x_{i+1}, x_{i-1}, x_{i+2}, ...  whose halves are residue intervals
centred on their leaves.  :func:`block_factorize` keeps the same shape (k
paths, each invariant under the rotation by k, center edges forming the
matching x_j x_{j+k}) but each half covers the block x_i..x_{i+k-1} or
x_{i+k}..x_{i+2k-1}.  The octahedral planar parts in
:mod:`girththick.construction` need the block halves: with centred halves
some cross pair between two vertex groups is always covered twice.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .errors import InvalidParameterError
from .graph import Edge, norm_edge


def _x(j: int, k: int) -> int:
    """Stored label of ``x_j`` with ``j`` read modulo ``2k``."""
    return (j - 1) % (2 * k)


def _ceil_half(a: int) -> int:
    return -(-a // 2)


@dataclass(frozen=True)
class PathFactor:
    k: int
    #: ``paths[i - 1]`` is F_i as a vertex sequence from x_i to x_{i+k}
    paths: tuple[tuple[int, ...], ...]

    def path(self, i: int) -> tuple[int, ...]:
        _check_index(self.k, i)
        return self.paths[i - 1]

    def path_edges(self, i: int) -> list[Edge]:
        p = self.path(i)
        return [norm_edge(a, b) for a, b in zip(p, p[1:])]


@dataclass(frozen=True)
class HalfPaths:
    """F_i with its center edge removed.

    Both halves run from their named leaf (x_i, resp. x_{i+k}) to the far
    leaf ``f_low``, resp. ``f_high``.
    """

    p_low: tuple[int, ...]
    p_high: tuple[int, ...]
    f_low: int
    f_high: int


def _check_index(k: int, i: int) -> None:
    if k < 1:
        raise InvalidParameterError(f"half-order must be >= 1, got {k}")
    if not 1 <= i <= k:
        raise InvalidParameterError(f"path index {i} outside 1..{k}")


@lru_cache(maxsize=None)
def factorize(k: int) -> PathFactor:
    """F_i visits x_i, x_{i+1}, x_{i-1}, x_{i+2}, x_{i-2}, ... and ends at x_{i+k}."""
    if k < 1:
        raise InvalidParameterError(f"half-order must be >= 1, got {k}")
    paths = []
    for i in range(1, k + 1):
        seq = [_x(i, k)]
        for m in range(1, k + 1):
            seq.append(_x(i + m, k))
            if len(seq) < 2 * k:
                seq.append(_x(i - m, k))
        paths.append(tuple(seq))
    return PathFactor(k, tuple(paths))


def center_edge(k: int, i: int) -> Edge:
    """Middle edge x_{i+ceil(k/2)} x_{i+ceil(3k/2)} of F_i."""
    _check_index(k, i)
    return norm_edge(_x(i + _ceil_half(k), k), _x(i + _ceil_half(3 * k), k))


@lru_cache(maxsize=None)
def block_factorize(k: int) -> PathFactor:
    """Factorization whose half paths run over blocks of k consecutive residues.

    Inside its block the half from x_i is the graceful zigzag
    x_i, x_{i+k-1}, x_{i+1}, x_{i+k-2}, ..., so every residue difference
    below k occurs once per half.
    """
    if k < 1:
        raise InvalidParameterError(f"half-order must be >= 1, got {k}")
    low, lo, hi = [], 0, k - 1
    while lo <= hi:
        low.append(lo)
        lo += 1
        if lo <= hi:
            low.append(hi)
            hi -= 1
    paths = tuple(
        tuple(_x(i + o, k) for o in low) + tuple(_x(i + k + o, k) for o in reversed(low))
        for i in range(1, k + 1)
    )
    return PathFactor(k, paths)


def split_at_center(pf: PathFactor, i: int) -> HalfPaths:
    """Remove the middle edge of F_i, leaving two halves of k vertices."""
    k = pf.k
    _check_index(k, i)
    if k < 2:
        raise InvalidParameterError("half paths are degenerate for k = 1")
    path = pf.path(i)
    low = path[:k]
    high = tuple(reversed(path[k:]))
    return HalfPaths(low, high, low[-1], high[-1])


def leaf_map(k: int, i: int) -> tuple[int, int]:
    """Stored labels of (f(x_i), f(x_{i+k}))."""
    _check_index(k, i)
    if k < 2:
        raise InvalidParameterError("leaf map is degenerate for k = 1")
    near, far = _x(i + _ceil_half(k), k), _x(i + _ceil_half(3 * k), k)
    return (far, near) if k % 2 else (near, far)


def leaf_offset(pf: PathFactor) -> int:
    """Constant ``c`` with f(x_j) = x_{j+c} for every residue j."""
    halves = split_at_center(pf, 1)
    c = (halves.f_low - halves.p_low[0]) % (2 * pf.k)
    for i in range(1, pf.k + 1):
        h = split_at_center(pf, i)
        for leaf, far in ((h.p_low[0], h.f_low), (h.p_high[0], h.f_high)):
            if (far - leaf) % (2 * pf.k) != c:
                raise InvalidParameterError("factorization is not rotation invariant")
    return c
