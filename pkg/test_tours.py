"""Circular tours, shuttling tours and the tour-order tables."""

import pytest

from conftest import WORKED_LABELS, WORKED_VERTICES
from coxcent.coxeter.catalog import catalog_graph
from coxcent.coxeter.system import CoxeterSystem
from coxcent.groupoid.cgraph import Groupoid
from coxcent.groupoid.tables import lookup_order, shuttling_rows
from coxcent.groupoid.tours import OrderMethod, Shape, gbm_pair, tour_order, walk_component
from coxcent.services.table_check import check_row, render_summary, verify_tables


def test_two_cells(worked):
    cells = [{WORKED_LABELS[v] for v in c.component.vertices} for c in worked.cells]
    assert sorted(cells, key=min) == [{2, 3, 4, 5}, {6, 7, 8, 9}]
    for cell in worked.cells:
        assert worked.cg.groupoid.path_element(cell.boundary).is_identity()


def test_shuttling_tours_and_orders(worked):
    found = {
        (frozenset({WORKED_LABELS[t.x], WORKED_LABELS[t.y]}), t.order) for t in worked.tours
    }
    assert found == {
        (frozenset({1, 10}), 1),
        (frozenset({1, 3}), 1),
        (frozenset({8, 10}), 1),
        (frozenset({4, 7}), 1),
        (frozenset({3, 4}), 2),
        (frozenset({7, 8}), 2),
    }


def test_order_methods_agree(worked):
    groupoid = worked.cg.groupoid
    for tour in worked.tours:
        for method in OrderMethod:
            assert tour_order(groupoid, tour, method) == tour.order


def test_tour_closed_path_has_its_order(worked):
    groupoid = worked.cg.groupoid
    geometry = groupoid.geometry
    for tour in worked.tours:
        element = groupoid.path_element(tour.closed_path)
        assert geometry.power(element, tour.order).is_identity()


def test_first_tour_at_v1(worked):
    # J = S - {s2}: loops w_{v1}^{s6} and w_{v3}^{s3} joined by v1 v2 v3
    groupoid = worked.cg.groupoid
    component = walk_component(groupoid, WORKED_VERTICES[1], 5, 4)
    assert component.shape is Shape.TWO_LOOPS
    assert {WORKED_LABELS[v] for v in component.vertices} == {1, 2, 3}
    assert {(WORKED_LABELS[e.source], e.s) for e in component.loops} == {(1, 5), (3, 2)}


def test_walk_is_none_outside_finite_type(worked):
    # [v1] + {s2, s5}: s1-s2-s3-s4-s5 carries a 4-bond and is not of finite type
    assert walk_component(worked.cg.groupoid, WORKED_VERTICES[1], 1, 4) is None


def test_gbm_pair_has_equal_elements(worked):
    groupoid = worked.cg.groupoid
    # [v2] + {s3, s6} closes to s3-s4-s5-s6 of type A4
    left, right = gbm_pair(groupoid, WORKED_VERTICES[2], 2, 5)
    assert groupoid.path_element(left) == groupoid.path_element(right)
    assert left[0] != right[0]


def test_lookup_is_symmetric():
    assert lookup_order("F", 4, None, (1, 4), (4, 1)) == 4
    assert lookup_order("E", 6, None, (6, 5), (1, 3)) == 1
    assert lookup_order("I2", 2, 9, (2, 1), (1, 2)) == 9
    assert lookup_order("A", 4, None, (2, 3), (3, 2)) is None


@pytest.mark.parametrize(
    "family, rank, m, ss, expected",
    [
        ("A", 3, None, (1, 2), 1),
        ("A", 4, None, (1, 2), 1),
        ("A", 5, None, (1, 2), 1),
        ("E", 7, None, (6, 1), 2),
        ("F", 4, None, (1, 4), 4),
        ("B", 3, None, (1, 2), 4),
        ("I2", 2, 7, (1, 2), 7),
    ],
)
def test_table_rows(family, rank, m, ss, expected):
    groupoid = Groupoid(CoxeterSystem(catalog_graph(family, rank, m)))
    (row,) = [r for r in shuttling_rows(family, rank, m) if r.ss == ss]
    record = check_row(groupoid, row)
    assert record.expected == expected
    assert record.passed, record
    assert record.formula == record.count == record.table == expected


def test_verify_tables_small_instances():
    instances = [("A", n, None) for n in (2, 3, 4)] + [("B", 3, None), ("H", 3, None)]
    instances += [("I2", 2, m) for m in (5, 6, 8)]
    summary = verify_tables(instances)
    assert summary.rows
    assert not summary.failures, render_summary(summary)
    assert render_summary(summary).endswith(f"{len(summary.rows)}/{len(summary.rows)} rows passed")
