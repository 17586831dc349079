"""Half-turns, normalizer symmetries, the W-perp window and element decomposition."""

from sympy.combinatorics import Permutation

from conftest import WORKED_LABELS, WORKED_VERTICES
from coxcent.coxeter.graph import INFINITY
from coxcent.groupoid.symmetry import (
    CentralizerDecomposition,
    NormalizerDecomposition,
    NotInCentralizer,
    NotInNormalizer,
    a_set,
    action_table,
    decompose_element,
    decompose_normalizer_element,
    lambda_components,
    positive_system_check,
)
from coxcent.groupoid.wperp import Verdict, rank_inequality


def _half_turn(worked):
    return worked.groups.get(frozenset({1, 2}))


def test_lambda_components(worked):
    assert lambda_components(worked.cg) == [frozenset({0}), frozenset({1, 2})]


def test_a_groups(worked):
    groups = worked.groups
    assert sorted(sorted(h.A) for h in groups.a) == [[], [1, 2]]
    assert sorted(sorted(h.A) for h in groups.a_prime) == [[], [0]]
    assert len(groups.tilde) == 4
    assert [h.A for h in groups.center] == [frozenset({0})]
    assert groups.minus_one_components == [frozenset({0})]


def test_half_turn_reverses_the_labelling(worked):
    turn = _half_turn(worked)
    assert turn.name == "g[2,3]"
    assert turn.target == WORKED_VERTICES[10]
    for label, vertex in WORKED_VERTICES.items():
        assert WORKED_LABELS[turn.vertex(vertex)] == 11 - label
    assert a_set(worked.cg, turn.element) == frozenset({1, 2})


def test_half_turn_inverts_a(worked):
    turn = _half_turn(worked)
    a = worked.pi1.generators[0]
    assert turn.element * a.element * turn.inverse == a.inverse


def test_center_is_generated_by_s1(worked):
    (center,) = worked.groups.center
    geometry = worked.cg.groupoid.geometry
    assert center.element == geometry.generator(0)


def test_normalizer_symmetry_inverts_a(worked):
    rho = worked.normalizer.get(Permutation([0, 2, 1]))
    assert rho is not None
    assert rho.name == "h[1,3,2]"
    assert rho.target == WORKED_VERTICES[10]
    a = worked.pi1.generators[0]
    assert rho.inverse * a.element * rho.element == a.inverse
    assert worked.normalizer.get(Permutation([1, 0, 2])) is None


def test_window_orders(worked):
    window = worked.window
    assert window.bound == 2
    assert {m for m in window.orders.values()} <= {2, INFINITY}
    for g in window.generators:
        commuting = [
            h for h in window.generators if h is not g and window.order(g.index, h.index) == 2
        ]
        assert len(commuting) <= 2
        assert window.class_of_root(g.root) == g.index


def test_window_roots_are_orthogonal_to_i(worked):
    geometry = worked.cg.groupoid.geometry
    for g in worked.window.generators:
        assert g.root.is_positive()
        for v in worked.cg.base:
            assert geometry.inner(g.root, geometry.simple_root(v)).is_zero


def test_no_finite_part(worked):
    report = worked.finite
    assert report.components
    assert all(c.verdict is Verdict.INFINITE for c in report.components)
    assert report.finite_members == []
    assert set(report.rank_data.values()) == {(0, 2, 3)}


def test_rank_inequality_fires(worked):
    for loop in worked.cg.loops():
        fired, data = rank_inequality(worked.igraph, worked.pi1, loop)
        assert fired
        assert data == (0, 2, 3)


def test_symbolic_families(worked):
    symbolic = worked.symbolic
    assert symbolic is not None
    assert len(symbolic.families) == 2
    # each r_{1,k} commutes with exactly two r_{4,l}
    assert sorted(symbolic.pattern.values()) == [2, 2]
    assert {(f, g) for f, g, _ in symbolic.pattern} == {(0, 1)}
    assert len(symbolic.describe()) == 2


def test_symmetries_keep_window_positive(worked):
    turns = worked.groups.tilde
    assert positive_system_check(worked.window, turns)
    assert positive_system_check(worked.window, worked.normalizer.symmetries)


def test_action_tables_are_involutive(worked):
    window = worked.window
    turn = _half_turn(worked)
    rho = worked.normalizer.get(Permutation([0, 2, 1]))
    table = action_table(worked.cg, worked.pi1, window, [(turn.name, turn), (rho.name, rho)])
    for images in table.values():
        for i, j in enumerate(images):
            if j is not None and images[j] is not None:
                assert images[j] == i


def test_y_shifts_the_window(worked):
    window = worked.window
    table = action_table(worked.cg, worked.pi1, window, [("a", worked.pi1.word(1))])
    images = table["a"]
    assert any(j is not None and j != i for i, j in enumerate(images))


def test_decompose_central_generator(worked):
    result = decompose_element(worked.cg, worked.pi1, worked.groups, [0])
    assert isinstance(result, CentralizerDecomposition)
    assert result.central == frozenset({0})
    assert result.half_turn == frozenset()
    assert result.perp == []
    assert result.y_word.is_identity


def test_decompose_half_turn(worked):
    geometry = worked.cg.groupoid.geometry
    word = geometry.reduced_word(_half_turn(worked).element)
    result = decompose_element(worked.cg, worked.pi1, worked.groups, word)
    assert isinstance(result, CentralizerDecomposition)
    assert result.half_turn == frozenset({1, 2})
    assert result.central == frozenset()
    assert result.perp == []


def test_decompose_y_generator(worked):
    geometry = worked.cg.groupoid.geometry
    word = geometry.reduced_word(worked.pi1.generators[0].element)
    result = decompose_element(worked.cg, worked.pi1, worked.groups, word)
    assert isinstance(result, CentralizerDecomposition)
    assert result.y_word == worked.pi1.word(1)
    assert result.perp == []
    assert result.half_turn == result.central == frozenset()


def test_decompose_loop_reflection(worked):
    geometry = worked.cg.groupoid.geometry
    loop = worked.cg.edge(WORKED_VERTICES[1], 5)
    word = geometry.reduced_word(geometry.reflection(loop.loop_root))
    result = decompose_element(worked.cg, worked.pi1, worked.groups, word)
    assert isinstance(result, CentralizerDecomposition)
    assert len(result.perp) == 1


def test_s2_is_outside_the_centralizer(worked):
    result = decompose_element(worked.cg, worked.pi1, worked.groups, [1])
    assert result == NotInCentralizer((1,), 0)


def test_decompose_parabolic_element(worked):
    result = decompose_normalizer_element(worked.cg, worked.pi1, worked.normalizer, [2])
    assert isinstance(result, NormalizerDecomposition)
    assert result.u_word == (2,)
    assert result.rho.is_Identity
    assert result.perp == []
    assert result.y_word.is_identity


def test_decompose_normalizer_symmetry(worked):
    geometry = worked.cg.groupoid.geometry
    rho = worked.normalizer.get(Permutation([0, 2, 1]))
    word = geometry.reduced_word(rho.element)
    result = decompose_normalizer_element(worked.cg, worked.pi1, worked.normalizer, word)
    assert isinstance(result, NormalizerDecomposition)
    assert result.u_word == ()
    assert result.rho == Permutation([0, 2, 1])
    assert result.y_word.is_identity


def test_s2_is_outside_the_normalizer(worked):
    result = decompose_normalizer_element(worked.cg, worked.pi1, worked.normalizer, [1])
    assert result == NotInNormalizer((1,), 0)


def test_refined_decomposition_needs_minus_one_parts(worked):
    # the A2 component {s3, s4} is not of (-1)-type
    assert worked.refined is None


def test_normalizer_witness_is_moved_out_of_w_i(worked):
    geometry = worked.cg.groupoid.geometry
    result = decompose_normalizer_element(worked.cg, worked.pi1, worked.normalizer, [1])
    assert isinstance(result, NotInNormalizer)
    assert not result.inverse
    image = geometry.element([1]).column(result.witness)
    assert not image.support <= frozenset(worked.cg.base)


def test_random_centralizer_products_decompose(worked, rng):
    geometry = worked.cg.groupoid.geometry
    y = worked.pi1.generators[0].element
    pieces = [geometry.element([0]), _half_turn(worked).element, y, geometry.inverse(y)]
    for _ in range(6):
        product = geometry.identity()
        for _ in range(rng.randint(1, 4)):
            product = product * rng.choice(pieces)
        word = geometry.reduced_word(product)
        result = decompose_element(worked.cg, worked.pi1, worked.groups, word)
        assert isinstance(result, CentralizerDecomposition)
