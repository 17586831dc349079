"""Spanning trees, pi_1 of the 2-cell complex and the B_I / Y-tilde_I presentations."""

import pytest

from conftest import E1, E2, E3, WORKED_VERTICES
from coxcent.algebra.words import word_letters
from coxcent.core.exceptions import InputError
from coxcent.groupoid.cgraph import parse_edge_key
from coxcent.groupoid.presentations import build_tree, generator_names
from coxcent.groupoid.tours import unoriented


@pytest.fixture(scope="module")
def special_keys(worked_graph):
    return {parse_edge_key(k, worked_graph) for k in (E1, E2, E3)}


def test_tree_avoids_the_special_edges(worked, special_keys):
    tree = worked.tree
    assert tree.root == WORKED_VERTICES[1]
    assert len(tree.parent) == len(worked.cg) - 1
    for edge in tree.parent.values():
        assert not unoriented(edge) & special_keys


def test_tree_paths_compose(worked):
    tree, groupoid = worked.tree, worked.cg.groupoid
    for vertex in worked.cg.vertices:
        there = tree.path(vertex, tree.root)
        back = tree.path(tree.root, vertex)
        assert groupoid.path_element(back + there).is_identity()


def test_unknown_tree_key(worked):
    with pytest.raises(InputError) as info:
        build_tree(worked.cg, avoid=[((0, 1, 2), 3)])
    assert info.value.exit_code == 2


def test_preferring_a_special_edge_changes_the_tree(worked, special_keys):
    key = parse_edge_key(E2, worked.cg.system.graph)
    tree = build_tree(worked.cg, prefer=[key])
    assert any(key in unoriented(e) for e in tree.parent.values())


def test_pi1_is_free_of_rank_one(worked, special_keys):
    pi1 = worked.pi1
    assert pi1.y1_rank == 3
    assert pi1.cell_count == 2
    assert pi1.rank_if_free == 1
    assert pi1.relators == []
    (a,) = pi1.generators
    assert a.name == "a"
    assert parse_edge_key(E2, worked.cg.system.graph) in unoriented(a.edge)
    assert not a.element.is_identity()
    assert (a.element * a.inverse).is_identity()


def test_pi1_words_track_closed_paths(worked):
    pi1, tree = worked.pi1, worked.tree
    a = pi1.generators[0]
    assert pi1.word_element(pi1.word(1)) == a.element
    assert word_letters(pi1.path_to_word(tree.extend([a.edge]))) in ((1,), (-1,))
    # tree edges give the trivial word
    for edge in tree.parent.values():
        assert pi1.path_to_word(tree.extend([edge])).is_identity


def test_special_edges_spell_a_or_nothing(worked, special_keys):
    pi1, tree, cg = worked.pi1, worked.tree, worked.cg
    words = {}
    for key in special_keys:
        words[key] = pi1.path_to_word(tree.extend([cg.edges[key]]))
    assert all(len(w) <= 1 for w in words.values())
    assert any(len(w) == 1 for w in words.values())


def test_generator_names():
    assert generator_names(3) == ["a", "b", "c"]
    names = generator_names(30)
    assert len(set(names)) == 30


def test_b_presentation_is_infinite_dihedral(worked):
    b = worked.b
    presentation = b.presentation
    assert presentation.names == ["a", "g[2,3]"]
    assert [h.name for h in b.basis] == ["g[2,3]"]
    assert b.tree_stable
    assert b.splits is True
    witness = b.dihedral
    assert witness is not None
    for word in (witness.a_prime, witness.b_prime):
        element = presentation.word_element(word)
        assert (element * element).is_identity()
    kinds = {r.kind for r in presentation.relations}
    assert kinds == {"conjugation", "square"}


def test_presentation_relations_hold_in_w(worked):
    for presentation in (worked.b.presentation, worked.normalizer.presentation):
        for relation in presentation.relations:
            assert presentation.word_element(relation.lhs) == presentation.word_element(relation.rhs)


def test_normalizer_presentation(worked):
    assembly = worked.normalizer
    assert sorted(s.name for s in assembly.symmetries) == ["h[1,2,3]", "h[1,3,2]"]
    assert [s.name for s in assembly.generators] == ["h[1,3,2]"]
    assert assembly.presentation.names == ["a", "h[1,3,2]"]
    assert assembly.tree_stable
    assert assembly.splits is True
    assert assembly.dihedral is not None
    assert {r.kind for r in assembly.presentation.relations} == {"conjugation", "symmetry"}
