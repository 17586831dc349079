"""Geometric representation: elements, roots, reflections, longest elements."""

import pytest
from hypothesis import given
from hypothesis import strategies as st

from coxcent.core.exceptions import NotFiniteTypeError, PreconditionError
from coxcent.coxeter.catalog import catalog_graph
from coxcent.coxeter.graph import INFINITY, CoxeterGraph
from coxcent.coxeter.system import CoxeterSystem


@pytest.fixture(scope="module")
def h3():
    return CoxeterSystem(catalog_graph("H", 3))


@pytest.fixture(scope="module")
def worked_system(worked_graph):
    return CoxeterSystem(worked_graph)


def test_generators_are_involutions_with_bond_orders(h3):
    geometry = h3.geometry
    for i in range(3):
        assert (geometry.generator(i) * geometry.generator(i)).is_identity()
    assert geometry.power(geometry.element([0, 1]), 5).is_identity()
    assert not geometry.power(geometry.element([0, 1]), 4).is_identity()
    assert geometry.power(geometry.element([0, 2]), 2).is_identity()


def test_longest_element_of_h3(h3):
    geometry = h3.geometry
    w0 = h3.w0(range(3))
    assert geometry.length(w0) == 15
    assert len(geometry.positive_roots(range(3))) == 15
    for i in range(3):
        assert w0.column(i) == -geometry.simple_root(i)


def test_longest_element_requires_finite_type(worked_system):
    with pytest.raises(NotFiniteTypeError):
        worked_system.w0(range(6))


def test_pairwise_orders(worked_system):
    geometry = worked_system.geometry
    alpha = [geometry.simple_root(i) for i in range(6)]
    assert geometry.pairwise_order(alpha[0], alpha[1]) == 3
    assert geometry.pairwise_order(alpha[1], alpha[2]) == 4
    assert geometry.pairwise_order(alpha[0], alpha[5]) == 2
    assert geometry.pairwise_order(alpha[3], alpha[3]) == 1


def test_infinite_pair():
    system = CoxeterSystem(CoxeterGraph.from_edges(["x", "y"], [("x", "y", INFINITY)]))
    geometry = system.geometry
    assert geometry.pairwise_order(geometry.simple_root(0), geometry.simple_root(1)) == INFINITY


words = st.lists(st.integers(0, 5), max_size=10)


@given(words, words)
def test_elements_preserve_form_and_multiply(worked_system, u, v):
    geometry = worked_system.geometry
    w = geometry.element(u)
    assert geometry.preserves_form(w)
    assert geometry.element(u + v) == w * geometry.element(v)
    assert (w * geometry.inverse(w)).is_identity()


@given(words)
def test_reduced_word_spells_the_element(worked_system, u):
    geometry = worked_system.geometry
    w = geometry.element(u)
    reduced = geometry.reduced_word(w)
    assert geometry.element(reduced) == w
    assert len(reduced) <= len(u)
    assert len(reduced) % 2 == len(u) % 2


@given(words, st.integers(0, 5))
def test_reflection_along_a_root_is_a_conjugate(worked_system, u, i):
    geometry = worked_system.geometry
    w = geometry.element(u)
    gamma = w.apply(geometry.simple_root(i))
    assert geometry.reflection(gamma) == geometry.conjugate(w, geometry.generator(i))
    # roots are sign-coherent
    assert gamma.sign() != 0
    assert all(c.sign() * gamma.sign() >= 0 for c in gamma.coeffs)


@given(words)
def test_inversions_count_the_length(worked_system, u):
    geometry = worked_system.geometry
    w = geometry.element(u)
    length, inversions = geometry.length_and_inversions(w)
    assert length == len(inversions)
    assert all(gamma.is_positive() and not w.apply(gamma).is_positive() for gamma in inversions)


def test_simple_roots_form_a_root_basis(h3):
    geometry = h3.geometry
    assert geometry.is_root_basis([geometry.simple_root(i) for i in range(3)])
    b3 = CoxeterSystem(catalog_graph("B", 3)).geometry
    assert b3.is_root_basis([b3.simple_root(i) for i in range(3)])


def test_acute_pair_is_not_a_root_basis():
    geometry = CoxeterSystem(catalog_graph("A", 2)).geometry
    alpha = [geometry.simple_root(0), geometry.simple_root(1)]
    assert not geometry.is_root_basis([alpha[0], alpha[0] + alpha[1]])


def test_root_basis_needs_the_cosine_in_the_field(h3, monkeypatch):
    geometry = h3.geometry
    monkeypatch.setattr(geometry.field, "try_embed_cos", lambda m: None)
    with pytest.raises(PreconditionError):
        geometry.is_root_basis([geometry.simple_root(0), geometry.simple_root(1)])
