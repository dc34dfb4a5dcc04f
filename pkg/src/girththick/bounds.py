"""Edge bounds for planar graphs of given girth and girth-thickness values."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Optional

from .errors import InvalidParameterError
from .graph import INFINITE, Girth


def _check_girth_param(g: Girth) -> None:
    if g != INFINITE and (not float(g).is_integer() or g < 3):
        raise InvalidParameterError(f"girth parameter must be an integer >= 3 or INFINITE, got {g}")


def max_planar_size(n: int, g: Girth) -> int:
    """Largest edge count of a planar graph on ``n`` vertices with girth >= ``g``.

    Below ``g`` vertices no admissible cycle fits, so the graph is a forest.
    """
    _check_girth_param(g)
    if n < 1:
        raise InvalidParameterError(f"vertex count must be >= 1, got {n}")
    if g == INFINITE or n < g:
        return n - 1
    g = int(g)
    return (g * (n - 2)) // (g - 2)


def theta_lower_bound(n: int, g: Girth) -> int:
    """Counting lower bound on the number of parts of a girth-``g`` planar cover of K_n."""
    size = max_planar_size(n, g)
    if n == 1:
        return 1
    return _ceil_div(n * (n - 1) // 2, size)


class ThetaStatus(Enum):
    EXACT = "EXACT"
    LOWER_AND_UPPER = "LOWER_AND_UPPER"


@dataclass(frozen=True)
class ThetaResult:
    """A girth-thickness value, exact or bracketed by ``lower`` and ``upper``.

    ``value`` is the best known realisable part count, i.e. the upper bound.
    """

    value: int
    status: ThetaStatus
    lower: Optional[int] = None
    upper: Optional[int] = None

    def __post_init__(self):
        if self.status is ThetaStatus.EXACT:
            object.__setattr__(self, "lower", self.value)
            object.__setattr__(self, "upper", self.value)
        elif not (self.lower is not None and self.upper is not None and self.lower < self.upper):
            raise InvalidParameterError("bounds-only result needs lower < upper")
        elif self.value != self.upper:
            raise InvalidParameterError("value of a bounds-only result is its upper bound")

    @classmethod
    def exact(cls, value: int) -> "ThetaResult":
        return cls(value, ThetaStatus.EXACT)

    @classmethod
    def bounds(cls, lower: int, upper: int) -> "ThetaResult":
        return cls(upper, ThetaStatus.LOWER_AND_UPPER, lower, upper)

    @property
    def is_exact(self) -> bool:
        return self.status is ThetaStatus.EXACT

    def render(self) -> str:
        if self.is_exact:
            return f"EXACT {self.value}"
        return f"LOWER_AND_UPPER {self.lower} {self.upper}"

    @classmethod
    def parse(cls, text: str) -> "ThetaResult":
        head, *nums = text.split()
        try:
            values = [int(x) for x in nums]
            if head == "EXACT" and len(values) == 1:
                return cls.exact(values[0])
            if head == "LOWER_AND_UPPER" and len(values) == 2:
                return cls.bounds(*values)
        except ValueError:
            pass
        raise InvalidParameterError(f"cannot parse theta status {text!r}")


def _ceil_div(a: int, b: int) -> int:
    return -(-a // b)


def theta6_value(n: int) -> ThetaResult:
    """Girth-6 thickness of K_n; orders 3t+1 with t >= 4 are only bracketed."""
    if n <= 0:
        raise InvalidParameterError(f"vertex count must be >= 1, got {n}")
    if n == 2:
        return ThetaResult.exact(1)
    formula = _ceil_div(n + 2, 3)
    if n % 3 == 1 and n >= 13:
        from .construction import plan

        upper = plan(n).parts
        if upper > formula:
            return ThetaResult.bounds(formula, upper)
    return ThetaResult.exact(formula)


def theta4_value(n: int) -> ThetaResult:
    if n <= 0:
        raise InvalidParameterError(f"vertex count must be >= 1, got {n}")
    if n == 6:
        return ThetaResult.exact(3)
    return ThetaResult.exact(_ceil_div(n + 2, 4))
