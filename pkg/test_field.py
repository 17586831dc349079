"""Exact field Q(2cos(pi/N)) and free words."""

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from coxcent.algebra.field import build_field, minpoly_of_cos
from coxcent.algebra.words import (
    from_letters,
    reduced_words,
    spell,
    substitute,
    word_group,
    word_letters,
)
from coxcent.core.exceptions import FieldTooLargeError, PreconditionError


def _evaluate(poly, value):
    total = value.field.zero
    for c in poly.all_coeffs():
        total = total * value + Fraction(str(c))
    return total


@pytest.mark.parametrize(
    "m, coefficients",
    [(3, [1, -1]), (4, [1, 0, -2]), (5, [1, -1, -1]), (6, [1, 0, -3])],
)
def test_minpoly_of_cos_small_labels(m, coefficients):
    assert [Fraction(str(c)) for c in minpoly_of_cos(m).all_coeffs()] == coefficients


def test_field_for_labels_uses_lcm_without_two():
    assert build_field([2, 3, 4]).N == 12
    assert build_field([2]).N == 1
    assert build_field([]).N == 1


def test_field_too_large():
    with pytest.raises(FieldTooLargeError) as info:
        build_field([7, 11, 13], max_n=100)
    assert info.value.exit_code == 3
    assert info.value.details["N"] == 1001


def test_embedded_cosines_square_correctly():
    field = build_field([4, 6])
    assert field.embed_cos(4) ** 2 == 2
    assert field.embed_cos(6) ** 2 == 3
    assert field.embed_cos(3) == 1
    assert field.embed_cos(2).is_zero


def test_embed_cos_outside_field():
    field = build_field([4])
    assert field.try_embed_cos(5) is None
    with pytest.raises(PreconditionError):
        field.embed_cos(5)


def test_sign_decisions():
    field = build_field([5])
    golden = field.embed_cos(5)
    assert (golden - 1).sign() == 1
    assert (golden - 2).sign() == -1
    assert (golden * golden - golden - 1).is_zero
    # 1 - 2cos(pi/4) = 1 - sqrt(2) < 0
    assert (1 - build_field([4]).embed_cos(4)).sign() == -1


@given(st.sampled_from([4, 5, 6, 8, 10, 12]), st.sampled_from([2, 3, 4, 6, 12]))
def test_embed_cos_satisfies_its_minimal_polynomial(n, m):
    field = build_field([n, 12])
    value = field.embed_cos(m)
    assert _evaluate(minpoly_of_cos(m), value).is_zero


@given(
    st.sampled_from([5, 8, 12]),
    st.lists(st.integers(-3, 3), min_size=1, max_size=4),
    st.lists(st.integers(-3, 3), min_size=1, max_size=4),
)
def test_field_arithmetic_is_consistent(n, a, b):
    field = build_field([n])
    x, y = field.element(a), field.element(b)
    assert (x + y) - y == x
    assert x * y == y * x
    if not y.is_zero:
        assert (x / y) * y == x
    assert ((x - y).sign() > 0) == (x > y)


def test_inverse_uses_field_division():
    field = build_field([5])
    x = field.embed_cos(5) + 2
    assert x.inverse() * x == 1
    assert 1 / x == x.inverse()
    assert x**-2 * x * x == 1
    with pytest.raises(ZeroDivisionError):
        field.zero.inverse()


FREE3 = word_group(("a", "b", "c"))
words = st.lists(st.integers(-3, 3).filter(bool), max_size=12).map(
    lambda letters: from_letters(FREE3, letters)
)


@given(words, words)
def test_free_word_inverse(u, v):
    assert (u * u**-1).is_identity
    assert (u * v) ** -1 == v**-1 * u**-1


@given(words)
def test_free_word_is_reduced(u):
    letters = word_letters(u)
    assert all(a != -b for a, b in zip(letters, letters[1:]))
    assert from_letters(FREE3, letters) == u
    assert u.cyclic_reduction().cyclic_reduction() == u.cyclic_reduction()


def test_free_word_substitution_and_spelling():
    group = word_group(("a", "b"))
    a, b = group.generators
    assert substitute(a * b * a**-1, b, a * a) == a * a
    assert substitute(b**-1 * a * b, b, a) == a
    assert spell(from_letters(group, [2, 2, -1])) == "b^2 a^-1"
    assert spell(group.identity) == "1"
    with pytest.raises(ValueError):
        from_letters(group, [0])
    with pytest.raises(ValueError):
        from_letters(group, [3])


def test_reduced_words_count():
    # 1 + 4 + 4*3 words of length <= 2 in a free group of rank 2
    found = list(reduced_words(word_group(("a", "b")), 2))
    assert len(found) == 17
    assert len(set(found)) == 17
