"""Coxeter graphs, input documents and the finite-type catalog."""

import json

import pytest

from coxcent.core.exceptions import ParseError, PreconditionError
from coxcent.coxeter.catalog import (
    catalog_graph,
    classify_finite_type,
    coxeter_group_order,
    minus_one_type,
    tilde_closure,
    w0_diagram_action,
)
from coxcent.coxeter.graph import INFINITY, CoxeterGraph, parse_document


def _document(**overrides):
    document = {
        "name": "tiny",
        "generators": ["a", "b", "c"],
        "edges": [{"a": "a", "b": "b", "m": 3}, {"a": "b", "b": "c", "m": "inf"}],
        "subset": ["a"],
    }
    document.update(overrides)
    return json.dumps(document)


def test_parse_document():
    problem = parse_document(_document())
    graph = problem.graph
    assert graph.generators == ("a", "b", "c")
    assert graph.m(0, 1) == 3
    assert graph.m(1, 2) == INFINITY
    assert graph.m(0, 2) == 2
    assert problem.x_I == (0,)


@pytest.mark.parametrize(
    "overrides, location",
    [
        ({"edges": [{"a": "a", "b": "b", "m": 1}]}, "edges[0].m"),
        ({"edges": [{"a": "a", "b": "z", "m": 3}]}, "edges[0].b"),
        ({"subset": ["a", "a"]}, "subset[1]"),
        ({"generators": ["a", "a"]}, "generators[1]"),
    ],
)
def test_parse_errors_carry_location(overrides, location):
    with pytest.raises(ParseError) as info:
        parse_document(_document(**overrides))
    assert info.value.exit_code == 2
    assert location in info.value.message


def test_parse_rejects_malformed_json():
    with pytest.raises(ParseError):
        parse_document("{not json")


def test_graph_validation():
    with pytest.raises(PreconditionError):
        CoxeterGraph(("a", "b"), ((1, 3), (4, 1)))
    with pytest.raises(PreconditionError):
        CoxeterGraph(("a", "b"), ((1, 1), (1, 1)))


@pytest.mark.parametrize(
    "family, rank, m, name, order",
    [
        ("A", 3, None, "A3", 24),
        ("B", 3, None, "B3", 48),
        ("D", 4, None, "D4", 192),
        ("E", 6, None, "E6", 51840),
        ("F", 4, None, "F4", 1152),
        ("H", 3, None, "H3", 120),
        ("H", 4, None, "H4", 14400),
        ("I2", 2, 7, "I2(7)", 14),
    ],
)
def test_catalog_round_trip(family, rank, m, name, order):
    graph = catalog_graph(family, rank, m)
    labels = classify_finite_type(range(rank), graph)
    assert [label.name for label in labels] == [name]
    assert coxeter_group_order(labels) == order


def test_classify_rejects_infinite_types():
    affine = CoxeterGraph.from_edges(["x", "y", "z"], [("x", "y", 3), ("y", "z", 3), ("x", "z", 3)])
    assert classify_finite_type(range(3), affine) is None
    free = CoxeterGraph.from_edges(["x", "y"], [("x", "y", INFINITY)])
    assert classify_finite_type(range(2), free) is None
    assert classify_finite_type([0], free)[0].name == "A1"


def test_reducible_subset_and_empty_subset(worked_graph):
    labels = classify_finite_type([0, 2, 3], worked_graph)
    assert sorted(label.name for label in labels) == ["A1", "A2"]
    assert classify_finite_type([], worked_graph) == []
    assert coxeter_group_order([]) == 1


def test_minus_one_types():
    def label(family, rank, m=None):
        graph = catalog_graph(family, rank, m)
        return classify_finite_type(range(rank), graph)[0]

    assert minus_one_type(label("A", 1))
    assert not minus_one_type(label("A", 3))
    assert minus_one_type(label("B", 3))
    assert minus_one_type(label("D", 4))
    assert not minus_one_type(label("D", 5))
    assert not minus_one_type(label("E", 6))
    assert minus_one_type(label("E", 7))
    assert minus_one_type(label("I2", 2, 8))
    assert not minus_one_type(label("I2", 2, 5))


def test_w0_diagram_action():
    a3 = catalog_graph("A", 3)
    assert w0_diagram_action(range(3), a3) == {0: 2, 1: 1, 2: 0}
    b3 = catalog_graph("B", 3)
    assert w0_diagram_action(range(3), b3) == {0: 0, 1: 1, 2: 2}


def test_tilde_closure(worked_graph):
    # components of {s1, s3, s4} + {s6} meeting s6: only {s6}
    assert tilde_closure([0, 2, 3], [5], worked_graph) == frozenset({5})
    # s5 joins the s3-s4 component
    assert tilde_closure([0, 2, 3], [4], worked_graph) == frozenset({2, 3, 4})
