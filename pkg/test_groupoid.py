"""The groupoid graph C of the rank-6 worked example and generic groupoid identities."""

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import WORKED_LABELS, WORKED_VERTICES
from coxcent.core.exceptions import GraphTooLargeError, InputError, PreconditionError
from coxcent.coxeter.catalog import catalog_graph
from coxcent.coxeter.system import CoxeterSystem
from coxcent.groupoid.cgraph import build_cgraph, format_edge_key, parse_edge_key


def test_vertices_match_the_labelling(worked):
    assert set(worked.cg.vertices) == set(WORKED_VERTICES.values())
    assert worked.cg.base == WORKED_VERTICES[1]


def test_loop_and_edge_counts(worked):
    cg = worked.cg
    assert len(cg.loops()) == 6
    assert len(cg.y1_edges()) == 12
    assert {WORKED_LABELS[e.source] for e in cg.loops()} == {1, 3, 4, 7, 8, 10}


def test_named_loops(worked):
    cg = worked.cg
    # w_{v1}^{s6} and w_{v3}^{s3} end the first shuttling tour
    assert cg.edge(WORKED_VERTICES[1], 5).is_loop
    assert cg.edge(WORKED_VERTICES[3], 2).is_loop


def test_edges_map_simple_roots(worked):
    cg = worked.cg
    geometry = cg.groupoid.geometry
    for edge in cg.edges.values():
        assert cg.groupoid.target_of(edge.element, edge.source) == edge.target
        partner = cg.edges[edge.partner]
        assert (partner.element * edge.element).is_identity()
        if edge.is_loop:
            assert geometry.reflection(edge.loop_root) == edge.element
            assert edge.loop_root.is_positive()


def test_expansion_domain(worked):
    # [v1]_~s2 = {s1, s2, s3, s4} has type F4
    groupoid = worked.cg.groupoid
    assert groupoid.expand(WORKED_VERTICES[1], 1) is not None
    with pytest.raises(PreconditionError):
        groupoid.expand(WORKED_VERTICES[1], 0)


def test_vertex_budget(worked_problem):
    system = CoxeterSystem(worked_problem.graph)
    with pytest.raises(GraphTooLargeError) as info:
        build_cgraph(system, worked_problem.x_I, vertex_budget=5)
    assert info.value.exit_code == 3


def test_duplicate_vertex_rejected(worked_problem):
    system = CoxeterSystem(worked_problem.graph)
    with pytest.raises(PreconditionError):
        build_cgraph(system, (0, 0))


def test_edge_keys(worked, worked_graph):
    key = parse_edge_key("s2,s4,s5>s3", worked_graph)
    assert key == ((1, 3, 4), 2)
    assert format_edge_key(key, worked_graph) == "s2,s4,s5>s3"
    assert key in worked.cg.edges
    with pytest.raises(InputError):
        parse_edge_key("s2,s4,s5", worked_graph)
    with pytest.raises(InputError):
        parse_edge_key("s2,s9>s3", worked_graph)


def test_split_of_vertex_group_elements(worked):
    cg, pi1 = worked.cg, worked.pi1
    a = pi1.generators[0].element
    roots, y = cg.split_CI(a)
    assert roots == []
    assert y == a
    loop = cg.loops()[0]
    closed = worked.tree.extend([loop])
    element = cg.groupoid.path_element(closed)
    roots, y = cg.split_CI(element)
    assert len(roots) == 1 and y.is_identity()


def test_lp_counts_loops(worked):
    groupoid = worked.cg.groupoid
    for edge in worked.cg.edges.values():
        assert groupoid.lp(edge.element, edge.source) == (1 if edge.is_loop else 0)


@pytest.fixture(scope="module")
def a3_cgraph():
    return build_cgraph(CoxeterSystem(catalog_graph("A", 3)), (0,))


def test_a3_single_generator(a3_cgraph):
    assert set(a3_cgraph.vertices) == {(0,), (1,), (2,)}
    # r3 commutes with r1 and r1 commutes with r3
    assert {(e.source, e.s) for e in a3_cgraph.loops()} == {((0,), 2), ((2,), 0)}


@given(st.lists(st.integers(0, 11), max_size=8))
def test_standard_expression_recomposes(worked, picks):
    """Random closed paths: their elements factor back through generators."""
    cg = worked.cg
    groupoid = cg.groupoid
    vertex = cg.base
    path = []
    for pick in picks:
        out = cg.out_edges(vertex)
        edge = out[pick % len(out)]
        path.append(edge)
        vertex = edge.target
    path += worked.tree.path(cg.base, vertex)
    element = groupoid.path_element(path)
    factors = groupoid.standard_expression(element, cg.base)
    assert groupoid.path_element(factors) == element
    assert groupoid.target_of(element, cg.base) == cg.base
