import json
from fractions import Fraction
from math import factorial

import pytest

from prenex import (
    InstanceTooLargeError,
    build_graph,
    canonicalize,
    count_pairs,
    count_pairs_via_graph,
    enumerate_classes,
    export_graph,
    implies,
    oracle_implies,
    reachability_bitsets,
    topological_order,
)
from support import all_raw_prefixes, fubini


# --- class enumeration --------------------------------------------------------


def test_class_counts_match_doubled_ordered_bell():
    assert [len(enumerate_classes(n)) for n in range(1, 6)] == [2, 6, 26, 150, 1082]
    for n in range(1, 6):
        assert len(enumerate_classes(n)) == 2 * fubini(n)


def test_classes_at_n1():
    classes = enumerate_classes(1)
    assert [(c.text, m) for c, m in classes] == [("A x1", 1), ("E x1", 1)]


def test_classes_at_n2():
    classes = enumerate_classes(2)
    assert [(c.text, m) for c, m in classes] == [
        ("A x1 A x2", 2),
        ("A x1 E x2", 1),
        ("A x2 E x1", 1),
        ("E x1 A x2", 1),
        ("E x1 E x2", 2),
        ("E x2 A x1", 1),
    ]


def test_every_raw_prefix_lands_in_exactly_one_class():
    for n in (1, 2, 3, 4):
        index = {c.rep: m for c, m in enumerate_classes(n)}
        hits = {rep: 0 for rep in index}
        for p in all_raw_prefixes(n):
            hits[canonicalize(p).rep] += 1
        assert hits == index  # observed sizes equal declared multiplicities


def test_multiplicities_sum_to_full_space():
    for n in range(1, 8):
        total = sum(m for _, m in enumerate_classes(n))
        assert total == factorial(n) * 2**n


def test_enumeration_cap():
    with pytest.raises(InstanceTooLargeError):
        enumerate_classes(8)
    with pytest.raises(InstanceTooLargeError):
        enumerate_classes(0)


# --- implication graph ----------------------------------------------------------


def test_graph_at_n1():
    g = build_graph(1)
    assert [c.text for c in g.vertices] == ["A x1", "E x1"]
    assert g.sorted_edges() == [(0, 1)]


def test_graph_at_n2_has_ten_edges():
    g = build_graph(2)
    assert len(g.vertices) == 6
    assert len(g.edges) == 10
    text = {i: c.text for i, c in enumerate(g.vertices)}
    out = {text[u] for (u, v) in g.edges if text[v] == "E x1 E x2"}
    # every mixed class steps down to the bottom class
    assert out == {"A x1 E x2", "A x2 E x1", "E x1 A x2", "E x2 A x1"}
    top_out = {text[v] for (u, v) in g.edges if text[u] == "A x1 A x2"}
    assert top_out == {"A x1 E x2", "A x2 E x1", "E x1 A x2", "E x2 A x1"}


def test_graph_is_acyclic_up_to_n5():
    for n in range(1, 6):
        g = build_graph(n)
        order = topological_order(g)
        position = {u: i for i, u in enumerate(order)}
        assert all(position[u] < position[v] for u, v in g.edges)


def test_no_self_loops():
    for n in range(1, 5):
        g = build_graph(n)
        assert all(u != v for u, v in g.edges)


def test_top_reaches_all_and_all_reach_bottom():
    for n in (1, 2, 3, 4):
        g = build_graph(n)
        reach = reachability_bitsets(g)
        text = [c.text for c in g.vertices]
        top = text.index(" ".join(f"A x{i + 1}" for i in range(n)))
        bottom = text.index(" ".join(f"E x{i + 1}" for i in range(n)))
        everything = (1 << len(g.vertices)) - 1
        assert reach[top] == everything
        assert all(r & (1 << bottom) for r in reach)


def test_graph_reachability_matches_decider():
    for n in (1, 2, 3, 4):
        g = build_graph(n)
        reach = reachability_bitsets(g)
        for u, src in enumerate(g.vertices):
            for v, dst in enumerate(g.vertices):
                expected = bool(reach[u] >> v & 1)
                assert implies(src.rep, dst.rep).accepted == expected


def test_graph_edges_match_oracle_single_moves():
    # spot-check edge semantics: an edge (u, v) means some raw member of u
    # reaches v, hence u implies v
    g = build_graph(3)
    for u, v in g.sorted_edges():
        assert oracle_implies(g.vertices[u].rep, g.vertices[v].rep)


# --- pair census -----------------------------------------------------------------


def test_count_pairs_n1():
    report = count_pairs(1)
    assert (report.true_pairs, report.total_pairs) == (3, 4)
    assert report.probability == Fraction(3, 4)
    assert report.class_count == 2 and report.edge_count == 1


def test_count_pairs_n2():
    report = count_pairs(2)
    assert (report.true_pairs, report.total_pairs) == (34, 64)
    assert report.probability == Fraction(17, 32)


def test_count_pairs_reflexivity_floor():
    for n in (1, 2, 3):
        report = count_pairs(n)
        assert report.true_pairs >= factorial(n) * 2**n
        assert 0 < report.probability <= 1


def test_counting_methods_agree():
    for n in (1, 2, 3, 4):
        assert count_pairs(n).true_pairs == count_pairs_via_graph(n).true_pairs


def test_count_pairs_cap():
    with pytest.raises(InstanceTooLargeError):
        count_pairs(6)


# --- export ----------------------------------------------------------------------


def test_export_json_n1():
    doc = json.loads(export_graph(build_graph(1), "json"))
    assert doc == {
        "n": 1,
        "vertices": [
            {"id": 0, "prefix": "A x1", "multiplicity": 1},
            {"id": 1, "prefix": "E x1", "multiplicity": 1},
        ],
        "edges": [[0, 1]],
    }


def test_export_json_vertex_count_n2():
    doc = json.loads(export_graph(build_graph(2), "json"))
    assert len(doc["vertices"]) == 6
    assert sorted(doc["edges"]) == doc["edges"]


def test_export_dot_n1():
    out = export_graph(build_graph(1), "dot").decode()
    assert out == (
        "digraph implication_classes {\n"
        '  0 [label="A x1"];\n'
        '  1 [label="E x1"];\n'
        "  0 -> 1;\n"
        "}\n"
    )


def test_export_is_byte_stable():
    g1, g2 = build_graph(3), build_graph(3)
    for fmt in ("json", "dot"):
        assert export_graph(g1, fmt) == export_graph(g2, fmt)


def test_export_rejects_unknown_format():
    with pytest.raises(ValueError):
        export_graph(build_graph(1), "yaml")
