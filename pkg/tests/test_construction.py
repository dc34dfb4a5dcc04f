import math
from collections import Counter

import pytest

from girththick import construction as con
from girththick.bounds import theta6_value
from girththick.construction import (
    ConstructionTrace,
    Tag,
    VertexLayout,
    build_thickness_parts,
    decompose,
    plan,
    split_case_6k,
    split_case_6k3,
)
from girththick.decomposition import verify_decomposition
from girththick.errors import ConstructionFailedError, InvalidParameterError, UnsupportedOrderError
from girththick.graph import INFINITE, girth


def _conserves(d):
    counts = Counter(e for p in d.parts for e in p)
    return sum(len(p) for p in d.parts) == d.n * (d.n - 1) // 2 and set(counts.values()) == {1}


@pytest.mark.parametrize("k", [2, 3, 4, 5])
def test_vertex_layout_is_a_bijection(k):
    lay = VertexLayout(k)
    labels = [lay.vertex(x, j) for x in "uvw" for j in range(1, 2 * k + 1)]
    labels += [lay.apex(x) for x in "uvw"]
    assert sorted(labels) == list(range(6 * k + 3))
    assert lay.vertex("u", 2 * k + 1) == lay.vertex("u", 1)
    assert lay.name(lay.vertex("v", 3)) == "v_3"


@pytest.mark.parametrize("k", [2, 3, 4, 5])
def test_thickness_parts(k):
    d = build_thickness_parts(k)
    assert len(d) == k + 1
    assert _conserves(d)
    assert all(len(p) == 3 * (6 * k - 2) for p in d.parts[:k])
    assert len(d.parts[k]) == 3 * k
    assert verify_decomposition(d, 3).overall


def test_thickness_part_edge_counts_small():
    assert [len(p) for p in build_thickness_parts(2).parts] == [30, 30, 6]
    assert [len(p) for p in build_thickness_parts(3).parts] == [48, 48, 48, 9]


@pytest.mark.parametrize("k", [2, 3, 4, 5])
def test_case_6k(k):
    d = split_case_6k(k)
    assert len(d) == 2 * k + 1 == math.ceil((6 * k + 2) / 3)
    assert _conserves(d)
    assert verify_decomposition(d, 6).overall
    last = d.part_graph(2 * k)
    assert girth(last) == INFINITE and len(last.edges) == 5 * k


@pytest.mark.parametrize("k", [2, 3, 4, 5])
def test_case_6k3(k):
    d = split_case_6k3(k)
    assert len(d) == 2 * k + 2 == math.ceil((6 * k + 5) / 3)
    assert _conserves(d)
    assert verify_decomposition(d, 6).overall


@pytest.mark.parametrize("k", [2, 3, 4])
def test_apex_degree(k):
    d = split_case_6k3(k)
    lay = VertexLayout(k)
    for x in "uvw":
        a = lay.apex(x)
        incident = Counter(v for p in d.parts for e in p if a in e for v in e if v != a)
        assert set(incident) == set(range(6 * k + 3)) - {a}
        assert set(incident.values()) == {1}


@pytest.mark.parametrize("k", [2, 3, 4, 5])
def test_case1_bookkeeping(k):
    trace = ConstructionTrace()
    d = split_case_6k(k, trace)
    assert len(trace.tags) == len(d)
    for tagged, part in zip(trace.tags, d.parts):
        assert set(tagged) == part
    readded = trace.count(Tag.TRIANGLE_READDED)
    assert sum(readded[:-1]) == 4 * k
    assert readded[-1] == 2 * k
    assert sum(readded) == 6 * k
    assert trace.count(Tag.MATCHING)[-1] == 3 * k
    assert trace.rules == ["alternation"] * (2 * k) + ["paths"]


@pytest.mark.parametrize("k", [2, 3])
def test_case2_bookkeeping(k):
    trace = ConstructionTrace()
    split_case_6k3(k, trace)
    apex = trace.count(Tag.APEX_EDGE)
    assert apex[: 2 * k] == [6] * (2 * k)
    assert trace.count(Tag.STEP4_PRISM)[-2:] == [1 + 8 * k, 2 + 7 * k]


@pytest.mark.parametrize("k", [2, 3, 4])
def test_matching_is_the_leaf_pair_set(k):
    lay = VertexLayout(k)
    matching = set(build_thickness_parts(k).parts[k])
    leaves = {
        tuple(sorted((con._far(lay, x, i), con._far(lay, x, i + k))))
        for x in "uvw"
        for i in range(1, k + 1)
    }
    assert leaves == matching


def test_case1_parts_contain_hexagons():
    d = split_case_6k(2)
    assert min(girth(g) for g in d.graphs()) == 6
    assert not verify_decomposition(d, 7).overall


@pytest.mark.parametrize("builder", [build_thickness_parts, split_case_6k, split_case_6k3])
def test_small_orders_rejected(builder):
    for k in (1, 0):
        with pytest.raises(UnsupportedOrderError):
            builder(k)


def _no_rule(part):
    raise ConstructionFailedError("disabled")


@pytest.mark.parametrize("k", [2, 3, 4])
def test_repair_fallback(monkeypatch, k):
    monkeypatch.setattr(con, "_rule_colouring", _no_rule)
    trace = ConstructionTrace()
    d = split_case_6k(k, trace)
    assert verify_decomposition(d, 6).overall
    assert trace.rules[: 2 * k] == ["backtracking"] * (2 * k)


def test_repair_fallback_case2(monkeypatch):
    monkeypatch.setattr(con, "_rule_colouring", _no_rule)
    assert verify_decomposition(split_case_6k3(2), 6).overall


def test_repair_budget_exhaustion_reports_the_part(monkeypatch):
    monkeypatch.setattr(con, "_rule_colouring", _no_rule)
    part = con._thickness_part(3, 1)
    with pytest.raises(ConstructionFailedError) as info:
        con._split_part(part, con._case1_chords(VertexLayout(3), 1), budget=0)
    assert info.value.part == frozenset(part.edges)


@pytest.mark.parametrize("n", range(1, 41))
def test_decompose_every_order(n):
    d, theta, provenance = decompose(n)
    assert d.n == n
    assert verify_decomposition(d, 6).overall
    assert len(d) == theta.value
    if n % 3 == 1 and n >= 13:
        assert not theta.is_exact and theta.lower == math.ceil((n + 2) / 3)
    else:
        assert theta == theta6_value(n) and theta.is_exact
    if n > 1:
        smaller = d.delete_vertices([n - 1])
        assert verify_decomposition(smaller, 6).overall


def test_decompose_examples():
    d, theta, _ = decompose(4)
    assert len(d) == 2 and all(girth(g) == INFINITE for g in d.graphs())
    d, theta, prov = decompose(11)
    assert len(d) == 5 and prov == "HEREDITARY"
    d, theta, prov = decompose(13)
    assert len(d) == 6 and (theta.lower, theta.upper) == (5, 6)
    assert plan(13).parent == 15


def test_plan_parents():
    assert plan(23).source == "6k" and plan(23).deletions == 1
    assert plan(20).source == "6k+3" and plan(20).deletions == 1
    assert plan(16).parent == 18 and plan(19).parent == 21
    with pytest.raises(InvalidParameterError):
        plan(0)
