"""Decomposition certificates: a versioned text format, committed small cases and exports.

A certificate file looks like::

    # girth-thickness certificate
    schema_version: 1
    n: 4
    g: 6
    theta_status: EXACT 2
    provenance: EMBEDDED_TRIVIAL
    parts: 2
    part 0: 3
    0 1
    1 2
    2 3
    part 1: 3
    0 2
    0 3
    1 3
    end

Constructed certificates add a ``rules:`` line after ``parts:`` naming the
colouring rule behind each part.  Edges are written min endpoint first and
sorted inside each part, so rendering a parsed certificate reproduces the
file byte for byte.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from importlib import resources
from pathlib import Path
from typing import Optional, Union

from .bounds import ThetaResult, theta4_value, theta6_value, theta_lower_bound
from .decomposition import Decomposition, verify_decomposition
from .errors import CertificateFormatError, InvalidParameterError
from .graph import INFINITE, Edge, Girth
from .search import SearchProblem, SearchStatus, search_decomposition

log = logging.getLogger(__name__)

SCHEMA_VERSION = 1
_MAGIC = "# girth-thickness certificate"

#: committed search certificates: (n, g) -> part count
SEARCH_TARGETS = {(7, 6): 3, (10, 6): 4, (10, 4): 3}


class ProvenanceKind(Enum):
    CONSTRUCTED_6K = "CONSTRUCTED_6K"
    CONSTRUCTED_6K3 = "CONSTRUCTED_6K3"
    HEREDITARY = "HEREDITARY"
    SEARCH = "SEARCH"
    EMBEDDED_TRIVIAL = "EMBEDDED_TRIVIAL"


@dataclass(frozen=True)
class Provenance:
    kind: ProvenanceKind
    seed: Optional[int] = None
    digest: Optional[str] = None

    def __post_init__(self):
        searched = self.kind is ProvenanceKind.SEARCH
        if searched != (self.seed is not None and self.digest is not None):
            raise InvalidParameterError("seed and digest are recorded for searches only")

    def render(self) -> str:
        if self.kind is ProvenanceKind.SEARCH:
            return f"SEARCH seed={self.seed} digest={self.digest}"
        return self.kind.value

    @classmethod
    def parse(cls, text: str) -> "Provenance":
        head, *rest = text.split()
        try:
            kind = ProvenanceKind(head)
            if kind is not ProvenanceKind.SEARCH:
                if rest:
                    raise ValueError
                return cls(kind)
            fields = dict(item.split("=", 1) for item in rest)
            if set(fields) != {"seed", "digest"}:
                raise ValueError
            return cls(kind, int(fields["seed"]), fields["digest"])
        except ValueError as exc:
            raise CertificateFormatError(f"bad provenance {text!r}") from exc


def _render_girth(g: Girth) -> str:
    return "inf" if g == INFINITE else str(int(g))


def _parse_girth(text: str) -> Girth:
    if text == "inf":
        return INFINITE
    return int(text)


def theta_status_for(n: int, g: Girth, parts: int) -> ThetaResult:
    """What is known about the girth-g thickness of K_n given a ``parts``-part witness."""
    if g == 6:
        return theta6_value(n)
    if g == 4 and n <= 10:
        return theta4_value(n)
    lower = theta_lower_bound(n, g)
    return ThetaResult.exact(parts) if lower >= parts else ThetaResult.bounds(lower, parts)


@dataclass(frozen=True)
class Certificate:
    schema_version: int
    n: int
    g: Girth
    parts: tuple[tuple[Edge, ...], ...]
    provenance: Provenance
    theta_status: ThetaResult
    #: per part, the colouring rule of a constructed part ("alternation", "repair", ...)
    rules: tuple[str, ...] = ()

    def __post_init__(self):
        canon = []
        for part in self.parts:
            edges = tuple(sorted((min(u, v), max(u, v)) for u, v in part))
            if len(set(edges)) != len(edges):
                raise CertificateFormatError("an edge is listed twice in one part")
            canon.append(edges)
        object.__setattr__(self, "parts", tuple(canon))
        object.__setattr__(self, "rules", tuple(self.rules))
        if self.rules and len(self.rules) != len(self.parts):
            raise CertificateFormatError("one rule per part is required")
        if any(not r or " " in r for r in self.rules):
            raise CertificateFormatError("rule names must be single words")
        # range checks
        self.decomposition()

    @classmethod
    def from_decomposition(
        cls,
        d: Decomposition,
        g: Girth,
        provenance: Provenance,
        theta: Optional[ThetaResult] = None,
        rules: tuple[str, ...] = (),
    ) -> "Certificate":
        if theta is None:
            theta = theta_status_for(d.n, g, len(d))
        parts = tuple(tuple(p) for p in d.parts)
        return cls(SCHEMA_VERSION, d.n, g, parts, provenance, theta, tuple(rules))

    def decomposition(self) -> Decomposition:
        return Decomposition.from_parts(self.n, self.parts)

    def verify(self):
        return verify_decomposition(self.decomposition(), self.g)

    def render(self) -> str:
        lines = [
            _MAGIC,
            f"schema_version: {self.schema_version}",
            f"n: {self.n}",
            f"g: {_render_girth(self.g)}",
            f"theta_status: {self.theta_status.render()}",
            f"provenance: {self.provenance.render()}",
            f"parts: {len(self.parts)}",
        ]
        if self.rules:
            lines.append(f"rules: {' '.join(self.rules)}")
        for i, part in enumerate(self.parts):
            lines.append(f"part {i}: {len(part)}")
            lines.extend(f"{u} {v}" for u, v in part)
        lines.append("end")
        return "\n".join(lines) + "\n"

    @classmethod
    def parse(cls, text: str) -> "Certificate":
        return parse_certificate(text)


def _field(lines: list[str], pos: int, key: str) -> str:
    if pos >= len(lines) or not lines[pos].startswith(key + ": "):
        raise CertificateFormatError(f"line {pos + 1}: expected '{key}: ...'")
    return lines[pos][len(key) + 2:]


def parse_certificate(text: str) -> Certificate:
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines or lines[0] != _MAGIC:
        raise CertificateFormatError("missing certificate header")
    try:
        version = int(_field(lines, 1, "schema_version"))
        if version != SCHEMA_VERSION:
            raise CertificateFormatError(f"unsupported schema version {version}")
        n = int(_field(lines, 2, "n"))
        g = _parse_girth(_field(lines, 3, "g"))
        theta = ThetaResult.parse(_field(lines, 4, "theta_status"))
        provenance = Provenance.parse(_field(lines, 5, "provenance"))
        count = int(_field(lines, 6, "parts"))
        pos, parts, rules = 7, [], ()
        if pos < len(lines) and lines[pos].startswith("rules: "):
            rules = tuple(_field(lines, pos, "rules").split(" "))
            pos += 1
        for i in range(count):
            size = int(_field(lines, pos, f"part {i}"))
            block = lines[pos + 1 : pos + 1 + size]
            if len(block) != size:
                raise CertificateFormatError(f"part {i} is truncated")
            edges = []
            for line in block:
                u, v = line.split(" ")
                edges.append((int(u), int(v)))
            parts.append(tuple(edges))
            pos += 1 + size
        if lines[pos:] != ["end"]:
            raise CertificateFormatError("missing or misplaced end marker")
        return Certificate(version, n, g, tuple(parts), provenance, theta, rules)
    except CertificateFormatError:
        raise
    except (ValueError, IndexError) as exc:
        raise CertificateFormatError(str(exc)) from exc


def load_certificate(path: Union[str, Path], strict: bool = False) -> Certificate:
    """Read a certificate file; with ``strict`` it must also pass the verifier."""
    try:
        text = Path(path).read_text()
    except (OSError, UnicodeDecodeError) as exc:
        raise CertificateFormatError(f"cannot read {path}: {exc}") from exc
    cert = parse_certificate(text)
    if strict and not cert.verify().overall:
        raise CertificateFormatError(f"{path} fails verification at g={_render_girth(cert.g)}")
    return cert


def save_certificate(cert: Certificate, path: Union[str, Path]) -> None:
    Path(path).write_text(cert.render())


# -- committed small cases ----------------------------------------------------


def certificate_filename(n: int, g: Girth) -> str:
    return f"k{n}_g{_render_girth(g)}.cert"


def data_dir() -> Path:
    return Path(str(resources.files("girththick") / "data"))


def _embedded(n: int) -> Certificate:
    if n == 2:
        parts = (((0, 1),),)
    else:
        parts = (((0, 1), (1, 2), (2, 3)), ((0, 2), (1, 3), (0, 3)))
    return Certificate(
        SCHEMA_VERSION, n, 6, parts, Provenance(ProvenanceKind.EMBEDDED_TRIVIAL), theta6_value(n)
    )


def load_small_certificate(n: int, g: Girth = 6) -> Certificate:
    """The base certificate for K_n: embedded for n = 2, 4 at g = 6, committed otherwise."""
    if g == 6 and n in (2, 4):
        return _embedded(n)
    if (n, g) not in SEARCH_TARGETS:
        raise InvalidParameterError(f"no small-case certificate for n={n}, g={g}")
    return load_certificate(data_dir() / certificate_filename(n, g), strict=True)


def small_g4_decomposition(n: int, seed: int = 1) -> tuple[Decomposition, ThetaResult, str]:
    """A triangle-free planar decomposition of K_n for n <= 10.

    Orders below 10 are cut from the committed K_10 certificate; when that
    leaves more parts than the known value a short search closes the gap.
    """
    if not 1 <= n <= 10:
        raise InvalidParameterError("girth-4 decompositions are served for 1 <= n <= 10 only")
    base = load_small_certificate(10, 4)
    theta = theta4_value(n)
    if n == 10:
        return base.decomposition(), theta, base.provenance.render()
    d = base.decomposition().delete_vertices(range(n, 10))
    provenance = ProvenanceKind.HEREDITARY.value
    if len(d) > theta.value:
        result = search_decomposition(SearchProblem(n, 4, theta.value, seed=seed, restart_nodes=500))
        if result.found:
            d = result.decomposition
            provenance = Provenance(ProvenanceKind.SEARCH, seed, result.stats.digest()).render()
    return d, theta, provenance


@dataclass(frozen=True)
class RegenOutcome:
    n: int
    g: Girth
    parts: int
    status: str  # "kept", "FOUND", "BUDGET" or "EXHAUSTED"
    path: Path


def regenerate_certificates(
    directory: Optional[Union[str, Path]] = None,
    seed: int = 1,
    budget_nodes: Optional[int] = None,
    budget_secs: Optional[float] = None,
    restart_nodes: int = 500,
    force: bool = False,
) -> list[RegenOutcome]:
    """Produce the search certificates; valid ones already on disk are kept.

    Each target reports its own outcome, so one exhausted budget does not
    discard the others.
    """
    out = Path(directory) if directory is not None else data_dir()
    out.mkdir(parents=True, exist_ok=True)
    outcomes = []
    for (n, g), parts in SEARCH_TARGETS.items():
        path = out / certificate_filename(n, g)
        if not force and path.exists():
            try:
                cert = load_certificate(path, strict=True)
                if len(cert.parts) == parts and cert.n == n and cert.g == g:
                    outcomes.append(RegenOutcome(n, g, parts, "kept", path))
                    continue
            except CertificateFormatError:
                log.warning("replacing invalid certificate %s", path)
        problem = SearchProblem(
            n, g, parts, budget_nodes=budget_nodes, budget_secs=budget_secs,
            seed=seed, restart_nodes=restart_nodes,
        )
        result = search_decomposition(problem)
        if result.found:
            prov = Provenance(ProvenanceKind.SEARCH, seed, result.stats.digest())
            save_certificate(Certificate.from_decomposition(result.decomposition, g, prov), path)
        outcomes.append(RegenOutcome(n, g, parts, result.status.value, path))
        log.info("certificate n=%d g=%s: %s", n, g, result.status.value)
    return outcomes


# -- exports -------------------------------------------------------------------


def to_edgelist(cert: Certificate) -> str:
    header = f"# n={cert.n} g={_render_girth(cert.g)} parts={len(cert.parts)}"
    blocks = ["\n".join(f"{u} {v}" for u, v in part) for part in cert.parts]
    return header + "\n" + "\n\n".join(blocks) + "\n"


def from_edgelist(text: str) -> tuple[int, list[list[Edge]]]:
    header, _, body = text.partition("\n")
    fields = dict(item.split("=") for item in header[2:].split())
    n, count = int(fields["n"]), int(fields["parts"])
    blocks = body[:-1].split("\n\n") if body else [""]
    parts = [[tuple(map(int, line.split())) for line in b.split("\n") if line] for b in blocks]
    if len(parts) != count:
        raise CertificateFormatError("part count does not match the header")
    return n, parts


def _graph6_size(n: int) -> list[int]:
    if n <= 62:
        return [n]
    if n <= 258047:
        return [63] + [(n >> s) & 63 for s in (12, 6, 0)]
    return [63, 63] + [(n >> s) & 63 for s in (30, 24, 18, 12, 6, 0)]


def graph6_encode(n: int, edges) -> str:
    """Standard graph6 string of a simple graph on vertices 0..n-1."""
    present = {(min(u, v), max(u, v)) for u, v in edges}
    bits = [1 if (i, j) in present else 0 for j in range(1, n) for i in range(j)]
    bits += [0] * (-len(bits) % 6)
    groups = [int("".join(map(str, bits[i : i + 6])), 2) for i in range(0, len(bits), 6)]
    return "".join(chr(63 + x) for x in _graph6_size(n) + groups)


def to_graph6(cert: Certificate) -> str:
    return "".join(graph6_encode(cert.n, part) + "\n" for part in cert.parts)


def to_dot(cert: Certificate) -> str:
    out = []
    for i, part in enumerate(cert.parts):
        out.append(f"graph part{i} {{")
        out.append(f"  graph [part={i}];")
        out.extend(f"  {v};" for v in range(cert.n))
        out.extend(f"  {u} -- {v} [part={i}];" for u, v in part)
        out.append("}")
    return "\n".join(out) + "\n"


EXPORTERS = {"edgelist": to_edgelist, "graph6": to_graph6, "dot": to_dot}


def export(cert: Certificate, fmt: str) -> str:
    try:
        return EXPORTERS[fmt](cert)
    except KeyError:
        raise InvalidParameterError(f"unknown export format {fmt!r}") from None
