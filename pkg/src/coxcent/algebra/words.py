"""Words in free groups, as sympy ``FreeGroupElement``s.

Groups are built over named generators by ``word_group``. Letters are addressed by signed
1-based integers: ``i`` is the i-th generator and ``-i`` its inverse.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterable, Iterator, List, Sequence, Tuple

from sympy import Symbol
from sympy.combinatorics.free_groups import FreeGroup, FreeGroupElement
from sympy.combinatorics.homomorphisms import GroupHomomorphism, homomorphism

Word = FreeGroupElement


@lru_cache(maxsize=None)
def word_group(names: Tuple[str, ...]) -> FreeGroup:
    """Free group on the given generator names (possibly none)."""
    return FreeGroup([Symbol(name) for name in names])


def letter(group: FreeGroup, index: int) -> Word:
    if index == 0 or abs(index) > group.rank:
        raise ValueError(f"{index} is not a letter of a rank {group.rank} free group")
    generator = group.generators[abs(index) - 1]
    return generator if index > 0 else generator**-1


def from_letters(group: FreeGroup, letters: Iterable[int]) -> Word:
    word = group.identity
    for index in letters:
        word = word * letter(group, index)
    return word


def word_letters(word: Word) -> Tuple[int, ...]:
    """Signed 1-based letters of a freely reduced word."""
    symbols = word.group.symbols
    out: List[int] = []
    for symbol, exponent in word.array_form:
        i = symbols.index(symbol) + 1
        out.extend([i if exponent > 0 else -i] * abs(exponent))
    return tuple(out)


def word_map(domain: FreeGroup, codomain: FreeGroup, images: Sequence[Word]) -> GroupHomomorphism:
    """The homomorphism sending the i-th generator of domain to images[i]."""
    return homomorphism(domain, codomain, domain.generators, list(images), check=False)


def substitute(word: Word, generator: Word, image: Word) -> Word:
    """Replace every occurrence of generator (and its inverse) in word."""
    group = word.group
    images = [image if g == generator else g for g in group.generators]
    return word_map(group, group, images)(word)


def embed(word: Word, group: FreeGroup) -> Word:
    """The same letters in a free group whose leading generators extend word's group."""
    return word_map(word.group, group, group.generators[: word.group.rank])(word)


def spell(word: Word) -> str:
    if word.is_identity:
        return "1"
    return " ".join(
        str(symbol) if exponent == 1 else f"{symbol}^{exponent}"
        for symbol, exponent in word.array_form
    )


def reduced_words(group: FreeGroup, max_length: int) -> Iterator[Word]:
    """All freely reduced words of length <= max_length, by length then generator order."""
    alphabet = [g**e for g in group.generators for e in (1, -1)]
    layer: List[Word] = [group.identity]
    yield group.identity
    for _ in range(max_length):
        following: List[Word] = []
        for word in layer:
            for step in alphabet:
                if not word.is_identity and word[-1] == step**-1:
                    continue
                extended = word * step
                following.append(extended)
                yield extended
        layer = following
