"""Acceptance criteria, one test per criterion.

Each criterion is a function returning ``(ok, detail)``; pytest asserts on
it and the suite prints one PASS/FAIL line per criterion at the end.  Run
``python3 tests/test_acceptance.py`` for the same lines without pytest.
"""

from __future__ import annotations

import math
import random
import sys
import tempfile
import time
from collections import Counter
from contextlib import redirect_stderr, redirect_stdout
from io import StringIO
from itertools import combinations
from pathlib import Path

import pytest

from girththick.bounds import ThetaResult, max_planar_size, theta_lower_bound
from girththick.certificate import certificate_filename, data_dir, load_certificate, load_small_certificate
from girththick.cli import main as cli_main
from girththick.construction import build_thickness_parts, decompose
from girththick.decomposition import verify_decomposition
from girththick.factorization import center_edge, factorize, leaf_map, split_at_center
from girththick.graph import INFINITE, Graph, complete_bipartite_graph, complete_graph, girth, norm_edge
from girththick.planarity import is_planar
from girththick.search import SearchProblem, search_decomposition

RESULTS: dict[int, tuple[bool, str]] = {}


def _cli(*argv) -> tuple[int, str]:
    out, err = StringIO(), StringIO()
    with redirect_stdout(out), redirect_stderr(err):
        code = cli_main([str(a) for a in argv])
    return code, out.getvalue() + err.getvalue()


def _construct_and_verify(n: int, workdir: Path) -> tuple[bool, str]:
    path = workdir / f"k{n}.cert"
    start = time.monotonic()
    code, _ = _cli("construct", "--n", n, "--out", path)
    elapsed = time.monotonic() - start
    vcode, _ = _cli("verify", path, "--g", 6)
    parts = len(load_certificate(path).parts)
    ok = code == 0 and vcode == 0 and parts == math.ceil((n + 2) / 3) and elapsed < 5
    return ok, f"n={n}: {parts} parts, verify exit {vcode}, {elapsed:.2f}s"


def _construction_criterion(ns, per_k) -> tuple[bool, str]:
    with tempfile.TemporaryDirectory() as tmp:
        results = [_construct_and_verify(n, Path(tmp)) for n in ns]
    ok = all(r[0] for r in results)
    counts = all(len(_parts(n)) == per_k(n) for n in ns)
    return ok and counts, "; ".join(r[1] for r in results)


def _parts(n):
    return decompose(n)[0].parts


def criterion_1():
    return _construction_criterion([12, 18, 24, 30], lambda n: 2 * (n // 6) + 1)


def criterion_2():
    return _construction_criterion([15, 21, 27], lambda n: 2 * ((n - 3) // 6) + 2)


def criterion_3():
    details, ok = [], True
    for n in (11, 14, 17, 20, 23, 26):
        d, theta, _ = decompose(n)
        good = verify_decomposition(d, 6).overall and len(d) == math.ceil((n + 2) / 3) and theta.is_exact
        ok &= good
        details.append(f"{n}:{len(d)}")
    for n in (13, 16, 19):
        d, theta, _ = decompose(n)
        f = math.ceil((n + 2) / 3)
        good = theta == ThetaResult.bounds(f, f + 1) and len(d) == f + 1 and verify_decomposition(d, 6).overall
        ok &= good
        details.append(f"{n}:{theta.render()}")
    return ok, " ".join(details)


def criterion_4():
    details, ok = [], True
    for k in range(2, 6):
        start = time.monotonic()
        d = build_thickness_parts(k)
        counts = Counter(e for p in d.parts for e in p)
        partition = set(counts) == set(complete_graph(6 * k).edges) and set(counts.values()) == {1}
        planar = all(is_planar(g) for g in d.graphs())
        sizes = all(len(p) == 3 * (6 * k - 2) for p in d.parts[:k])
        elapsed = time.monotonic() - start
        ok &= partition and planar and sizes and len(d) == k + 1 and elapsed < 5
        details.append(f"k={k}: {len(d)} parts {elapsed:.2f}s")
    return ok, "; ".join(details)


def criterion_5():
    ok, details = True, []
    for n, want in ((2, 1), (4, 2), (7, 3), (10, 4)):
        cert = load_small_certificate(n)
        good = cert.verify().overall and len(cert.parts) == want and cert.g == 6
        ok &= good
        details.append(f"K{n}:{len(cert.parts)}")
    ok &= [len(p) for p in load_small_certificate(7).parts] == [7, 7, 7]
    start = time.monotonic()
    r = search_decomposition(SearchProblem(7, 6, 3, seed=1, restart_nodes=500, budget_secs=60))
    elapsed = time.monotonic() - start
    regen = r.found and verify_decomposition(r.decomposition, 6).overall and elapsed < 60
    ok &= regen
    details.append(f"K7 search {r.status.value} in {elapsed:.2f}s")
    return ok, " ".join(details)


def criterion_6():
    with tempfile.TemporaryDirectory() as tmp:
        path = Path(tmp) / "k10_g4.cert"
        start = time.monotonic()
        code, _ = _cli("search", "--n", 10, "--g", 4, "--parts", 3, "--budget-secs", 7200, "--out", path)
        elapsed = time.monotonic() - start
        searched = code == 0 and load_certificate(path, strict=True).verify().overall
    start = time.monotonic()
    committed = load_certificate(data_dir() / certificate_filename(10, 4), strict=True)
    reverify = time.monotonic() - start
    ok = searched and theta_lower_bound(10, 4) == 3 and len(committed.parts) == 3 and reverify < 1
    return ok, f"search exit {code} in {elapsed:.1f}s; committed certificate re-verified in {reverify:.3f}s"


def criterion_7():
    ident = all(theta_lower_bound(n, 6) == math.ceil((n + 2) / 3) for n in range(6, 301))
    tri = all(theta_lower_bound(6 * k, 3) == k + 1 for k in range(1, 11))
    ok = ident and tri and theta_lower_bound(10, 6) == 4
    return ok, f"identity 6..300: {ident}; 6k at girth 3: {tri}"


def _detour_girth(graph: Graph):
    best = INFINITE
    adj = graph.adjacency()
    for u, v in graph.edges:
        dist, frontier = {u: 0}, [u]
        while frontier and v not in dist:
            nxt = []
            for x in frontier:
                for y in adj[x]:
                    if y not in dist and {x, y} != {u, v}:
                        dist[y] = dist[x] + 1
                        nxt.append(y)
            frontier = nxt
        if v in dist:
            best = min(best, dist[v] + 1)
    return best


def criterion_8():
    rng = random.Random(8)
    girth_cases = 0
    for _ in range(1500):
        n = rng.randint(1, 8)
        g = Graph.from_edges(n, [e for e in combinations(range(n), 2) if rng.random() < rng.random()])
        if girth(g) != _detour_girth(g):
            return False, f"girth mismatch on {sorted(g.edges)}"
        girth_cases += 1
    known = not is_planar(complete_graph(5)) and not is_planar(complete_bipartite_graph(3, 3))
    small = all(
        is_planar(Graph.from_edges(n, [p for i, p in enumerate(combinations(range(n), 2)) if m >> i & 1]))
        for n in range(5)
        for m in range(1 << (n * (n - 1) // 2))
    )
    planar_cases = 0
    while planar_cases < 1200:
        n = rng.randint(3, 12)
        g = Graph.from_edges(n, [e for e in combinations(range(n), 2) if rng.random() < 0.35])
        if is_planar(g):
            planar_cases += 1
            if len(g.edges) > 3 * n - 6:
                return False, "planar graph above 3n-6"
            gir = girth(g)
            if gir != INFINITE and n >= gir and len(g.edges) > max_planar_size(n, gir):
                return False, "planar graph above its girth edge bound"
    ok = known and small
    return ok, f"{girth_cases} girth cases, {planar_cases} planar cases, Kuratowski graphs {known}, n<=4 {small}"


def criterion_9():
    for k in range(2, 13):
        pf = factorize(k)
        counts = Counter(e for i in range(1, k + 1) for e in pf.path_edges(i))
        if set(counts) != set(combinations(range(2 * k), 2)) or set(counts.values()) != {1}:
            return False, f"k={k}: not a partition"
        for i in range(1, k + 1):
            path = pf.path(i)
            if norm_edge(path[k - 1], path[k]) != center_edge(k, i):
                return False, f"k={k} i={i}: center edge"
            h = split_at_center(pf, i)
            if leaf_map(k, i) != (h.f_low, h.f_high):
                return False, f"k={k} i={i}: leaf map"
        matching = {norm_edge(i - 1, (i - 1 + k) % (2 * k)) for i in range(1, k + 1)}
        if {norm_edge(*leaf_map(k, i)) for i in range(1, k + 1)} != matching:
            return False, f"k={k}: leaf-pair remark"
    return True, "k=2..12 partition, center edge, leaf map and leaf-pair remark"


CRITERIA = {
    1: ("Case-1 construction n=12,18,24,30", criterion_1),
    2: ("Case-2 construction n=15,21,27", criterion_2),
    3: ("hereditary and open cases", criterion_3),
    4: ("girth-3 thickness parts k=2..5", criterion_4),
    5: ("small-case certificates", criterion_5),
    6: ("K10 girth-4 search", criterion_6),
    7: ("bound identities", criterion_7),
    8: ("girth and planarity oracles", criterion_8),
    9: ("factorization exhaustive checks", criterion_9),
}


def _line(num: int, ok: bool, detail: str) -> str:
    return f"criterion {num} [{CRITERIA[num][0]}]: {'PASS' if ok else 'FAIL'} ({detail})"


@pytest.mark.parametrize("num", list(CRITERIA))
def test_criterion(num):
    ok, detail = CRITERIA[num][1]()
    RESULTS[num] = (ok, detail)
    assert ok, detail


if __name__ == "__main__":
    failed = 0
    for num, (_, fn) in CRITERIA.items():
        ok, detail = fn()
        failed += not ok
        print(_line(num, ok, detail), flush=True)
    sys.exit(1 if failed else 0)
