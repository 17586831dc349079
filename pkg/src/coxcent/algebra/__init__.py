"""Exact algebra: the coefficient field and free-group words."""

from .field import ExactField, FieldElement, build_field, minpoly_of_cos
from .words import Word, from_letters, reduced_words, word_group, word_letters

__all__ = [
    "ExactField",
    "FieldElement",
    "Word",
    "build_field",
    "from_letters",
    "minpoly_of_cos",
    "reduced_words",
    "word_group",
    "word_letters",
]
