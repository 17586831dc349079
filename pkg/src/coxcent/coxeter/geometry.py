"""Exact geometric representation: roots, the bilinear form and group elements as matrices.

Group elements are |S| x |S| matrices over the exact field acting on V in the basis of
simple roots (column t holds w . alpha_t). Equality of elements is matrix equality.
Words are carried only as provenance.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple, Union

import structlog

from ..algebra.field import ExactField, FieldElement
from ..core.exceptions import InvariantViolation, NotFiniteTypeError, PreconditionError
from .catalog import classify_finite_type
from .graph import INFINITY, CoxeterGraph, Label

logger = structlog.get_logger(__name__)

Matrix = Tuple[Tuple[FieldElement, ...], ...]

MAX_DIHEDRAL_ORDER = 10_000


@dataclass(frozen=True)
class RootVector:
    """Coefficient vector in the basis of simple roots."""

    coeffs: Tuple[FieldElement, ...]

    def __neg__(self) -> "RootVector":
        return RootVector(tuple(-c for c in self.coeffs))

    def __add__(self, other: "RootVector") -> "RootVector":
        return RootVector(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "RootVector") -> "RootVector":
        return RootVector(tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def scale(self, factor: FieldElement) -> "RootVector":
        return RootVector(tuple(factor * c for c in self.coeffs))

    @property
    def support(self) -> FrozenSet[int]:
        return frozenset(i for i, c in enumerate(self.coeffs) if not c.is_zero)

    def sign(self) -> int:
        """Sign of the first nonzero coefficient; roots are sign-coherent."""
        for c in self.coeffs:
            s = c.sign()
            if s:
                return s
        return 0

    def is_positive(self) -> bool:
        return self.sign() > 0

    def positive(self) -> "RootVector":
        return self if self.sign() > 0 else -self

    def sort_key(self) -> Tuple[Tuple[Fraction, ...], ...]:
        return tuple(c.coeffs for c in self.coeffs)

    def coeff_map(self, names: Sequence[str]) -> Dict[str, str]:
        """Sparse generator -> coefficient rendering."""
        return {names[i]: repr(c) for i, c in enumerate(self.coeffs) if not c.is_zero}


@dataclass(frozen=True, eq=False)
class GroupElement:
    """Matrix of the geometric representation with an optional word as provenance."""

    matrix: Matrix
    word: Optional[Tuple[int, ...]] = None
    _hash: int = field(init=False, repr=False, compare=False, default=0)

    def __post_init__(self) -> None:
        object.__setattr__(self, "_hash", hash(self.matrix))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GroupElement):
            return NotImplemented
        return self._hash == other._hash and self.matrix == other.matrix

    def __hash__(self) -> int:
        return self._hash

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        a, b = self.matrix, other.matrix
        n = len(a)
        zero = a[0][0] - a[0][0] if n else None
        rows = []
        for r in range(n):
            row = []
            nonzero = [(k, a[r][k]) for k in range(n) if not a[r][k].is_zero]
            for c in range(n):
                total = zero
                for k, value in nonzero:
                    entry = b[k][c]
                    if not entry.is_zero:
                        total = total + value * entry
                row.append(total)
            rows.append(tuple(row))
        word = None
        if self.word is not None and other.word is not None:
            word = self.word + other.word
        return GroupElement(tuple(rows), word)

    @property
    def rank(self) -> int:
        return len(self.matrix)

    def column(self, i: int) -> RootVector:
        """The image w . alpha_i."""
        return RootVector(tuple(row[i] for row in self.matrix))

    def apply(self, v: RootVector) -> RootVector:
        out = []
        for row in self.matrix:
            total = None
            for a, b in zip(row, v.coeffs):
                if a.is_zero or b.is_zero:
                    continue
                total = a * b if total is None else total + a * b
            out.append(total if total is not None else row[0] - row[0])
        return RootVector(tuple(out))

    def is_identity(self) -> bool:
        n = len(self.matrix)
        return all(
            (self.matrix[r][c] == (1 if r == c else 0)) for r in range(n) for c in range(n)
        )


class CoxeterGeometry:
    """The geometric representation of (W, S) over an exact field."""

    def __init__(self, graph: CoxeterGraph, field: ExactField) -> None:
        self.graph = graph
        self.field = field
        self.rank = graph.rank
        n = self.rank
        # two_form[i][j] = 2<alpha_i, alpha_j> = -2cos(pi/m), or -2 for m = infinity
        self.two_form: Tuple[Tuple[FieldElement, ...], ...] = tuple(
            tuple(self._twice_form_entry(graph.m(i, j)) for j in range(n)) for i in range(n)
        )
        half = Fraction(1, 2)
        self.form = tuple(tuple(half * e for e in row) for row in self.two_form)
        self._neighbours = tuple(
            tuple((j, self.two_form[i][j]) for j in range(n) if not self.two_form[i][j].is_zero)
            for i in range(n)
        )
        self._longest: Dict[FrozenSet[int], GroupElement] = {}
        self._positive_roots: Dict[FrozenSet[int], List[RootVector]] = {}
        self._generators = tuple(self.element((i,)) for i in range(n))

    def _twice_form_entry(self, m: Label) -> FieldElement:
        if m == 1:
            return self.field.rational(2)
        if m == INFINITY:
            return self.field.rational(-2)
        return -self.field.embed_cos(int(m))

    # -- vectors ---------------------------------------------------------

    def zero_vector(self) -> RootVector:
        return RootVector(tuple(self.field.zero for _ in range(self.rank)))

    def simple_root(self, i: int) -> RootVector:
        return RootVector(
            tuple(self.field.one if j == i else self.field.zero for j in range(self.rank))
        )

    def inner(self, u: RootVector, v: RootVector) -> FieldElement:
        total = self.field.zero
        for i, a in enumerate(u.coeffs):
            if a.is_zero:
                continue
            partial = self.field.zero
            for j, entry in self._neighbours[i]:
                b = v.coeffs[j]
                if not b.is_zero:
                    partial = partial + entry * b
            total = total + a * partial
        return total * Fraction(1, 2)

    def reflect_simple(self, i: int, v: RootVector) -> RootVector:
        """s_i . v; only coordinate i changes."""
        twice = self.field.zero
        for j, entry in self._neighbours[i]:
            b = v.coeffs[j]
            if not b.is_zero:
                twice = twice + entry * b
        coeffs = list(v.coeffs)
        coeffs[i] = coeffs[i] - twice
        return RootVector(tuple(coeffs))

    def reflect(self, gamma: RootVector, v: RootVector) -> RootVector:
        return v - gamma.scale(2 * self.inner(gamma, v))

    def is_unit(self, v: RootVector) -> bool:
        return self.inner(v, v) == 1

    # -- elements ----------------------------------------------------------

    def identity(self) -> GroupElement:
        n = self.rank
        return GroupElement(
            tuple(
                tuple(self.field.one if r == c else self.field.zero for c in range(n))
                for r in range(n)
            ),
            (),
        )

    def generator(self, i: int) -> GroupElement:
        return self._generators[i]

    def _times_generator(self, matrix: List[List[FieldElement]], i: int) -> None:
        """In place M <- M s_i: column t becomes col_t - 2<alpha_i, alpha_t> col_i."""
        column_i = [row[i] for row in matrix]
        for t, entry in self._neighbours[i]:
            for r, row in enumerate(matrix):
                if not column_i[r].is_zero:
                    row[t] = row[t] - entry * column_i[r]

    def element(self, word: Iterable[int]) -> GroupElement:
        """The product s_{w1} s_{w2} ... of a word, leftmost factor first."""
        word = tuple(word)
        n = self.rank
        matrix = [
            [self.field.one if r == c else self.field.zero for c in range(n)] for r in range(n)
        ]
        for i in word:
            self._times_generator(matrix, i)
        return GroupElement(tuple(tuple(row) for row in matrix), word)

    def apply(self, w: GroupElement, v: RootVector) -> RootVector:
        return w.apply(v)

    def is_positive(self, v: RootVector) -> bool:
        s = v.sign()
        if s == 0:
            raise PreconditionError("the zero vector has no sign")
        return s > 0

    def reduced_word(self, w: GroupElement) -> Tuple[int, ...]:
        """Reduced word by stripping right descents (lowest index first)."""
        matrix = [list(row) for row in w.matrix]
        stripped: List[int] = []
        while True:
            for i in range(self.rank):
                column = RootVector(tuple(row[i] for row in matrix))
                if column.sign() < 0:
                    self._times_generator(matrix, i)
                    stripped.append(i)
                    break
            else:
                return tuple(reversed(stripped))

    def length(self, w: GroupElement) -> int:
        return len(self.reduced_word(w))

    def length_and_inversions(self, w: GroupElement) -> Tuple[int, List[RootVector]]:
        """l(w) and Phi[w] = {positive roots sent negative by w}."""
        word = self.reduced_word(w)
        inversions: List[RootVector] = []
        for t in word:
            inversions = [self.reflect_simple(t, gamma) for gamma in inversions]
            inversions.append(self.simple_root(t))
        return len(word), inversions

    def inverse(self, w: GroupElement) -> GroupElement:
        word = w.word if w.word is not None else self.reduced_word(w)
        return self.element(reversed(word))

    def conjugate(self, w: GroupElement, x: GroupElement) -> GroupElement:
        """w x w^-1."""
        return w * x * self.inverse(w)

    def reflection(self, gamma: RootVector) -> GroupElement:
        """s_gamma . v = v - 2<gamma, v> gamma."""
        if not self.is_unit(gamma):
            raise PreconditionError("reflection requested along a non-unit vector")
        n = self.rank
        twice = [2 * self.inner(gamma, self.simple_root(t)) for t in range(n)]
        rows = tuple(
            tuple(
                (self.field.one if r == t else self.field.zero) - twice[t] * gamma.coeffs[r]
                for t in range(n)
            )
            for r in range(n)
        )
        return GroupElement(rows)

    def preserves_form(self, w: GroupElement) -> bool:
        """M^T B M == B."""
        n = self.rank
        columns = [w.column(i) for i in range(n)]
        return all(
            self.inner(columns[i], columns[j]) == self.form[i][j]
            for i in range(n)
            for j in range(i, n)
        )

    def power(self, w: GroupElement, exponent: int) -> GroupElement:
        if exponent < 0:
            return self.power(self.inverse(w), -exponent)
        result, base = self.identity(), w
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    # -- finite parabolic data --------------------------------------------

    def _require_finite(self, subset: FrozenSet[int]) -> None:
        if classify_finite_type(subset, self.graph) is None:
            raise NotFiniteTypeError(
                "subset is not of finite type", details={"subset": sorted(subset)}
            )

    def longest_element(self, subset: Iterable[int]) -> GroupElement:
        """w_0(K) by greedy ascent: multiply by the first s in K whose image is still positive."""
        key = frozenset(subset)
        cached = self._longest.get(key)
        if cached is not None:
            return cached
        self._require_finite(key)
        n = self.rank
        matrix = [
            [self.field.one if r == c else self.field.zero for c in range(n)] for r in range(n)
        ]
        word: List[int] = []
        order = sorted(key)
        while True:
            for i in order:
                column = RootVector(tuple(row[i] for row in matrix))
                if column.sign() > 0:
                    self._times_generator(matrix, i)
                    word.append(i)
                    break
            else:
                break
        element = GroupElement(tuple(tuple(row) for row in matrix), tuple(word))
        self._longest[key] = element
        return element

    def positive_roots(self, subset: Iterable[int]) -> List[RootVector]:
        """Phi_K^+ by closure from the simple roots of a finite-type K."""
        key = frozenset(subset)
        cached = self._positive_roots.get(key)
        if cached is not None:
            return cached
        self._require_finite(key)
        order = sorted(key)
        roots = [self.simple_root(i) for i in order]
        seen = set(roots)
        queue = list(roots)
        while queue:
            beta = queue.pop(0)
            for i in order:
                image = self.reflect_simple(i, beta)
                if image.sign() > 0 and image not in seen:
                    seen.add(image)
                    roots.append(image)
                    queue.append(image)
        self._positive_roots[key] = roots
        return roots

    def pairwise_order(self, beta: RootVector, gamma: RootVector) -> Label:
        """Order of s_beta s_gamma."""
        if beta == gamma or beta == -gamma:
            return 1
        c = self.inner(beta, gamma)
        if (c * c - 1).sign() >= 0:
            return INFINITY
        u, v = beta, gamma
        for k in range(1, MAX_DIHEDRAL_ORDER + 1):
            u = self.reflect(beta, self.reflect(gamma, u))
            v = self.reflect(beta, self.reflect(gamma, v))
            if u == beta and v == gamma:
                return k
        raise InvariantViolation(
            "dihedral reflection subgroup did not close", details={"inner": repr(c)}
        )

    def is_root_basis(self, psi: Sequence[RootVector]) -> bool:
        """<beta, gamma> = -cos(pi/m) for finite order m, and <= -1 otherwise."""
        for a, beta in enumerate(psi):
            for gamma in psi[a + 1:]:
                k = self.pairwise_order(beta, gamma)
                c = self.inner(beta, gamma)
                if k == INFINITY:
                    if (c + 1).sign() > 0:
                        return False
                    continue
                if k == 1:
                    return False
                expected = self.field.try_embed_cos(int(k))
                if expected is None:
                    raise PreconditionError(
                        "dihedral order outside the coefficient field", details={"order": int(k)}
                    )
                if 2 * c != -expected:
                    return False
        return True

    def canonical_simple_system(
        self, psi: Sequence[RootVector], ambient: Iterable[int]
    ) -> List[RootVector]:
        """Pi(Psi) for a reflection subgroup of a finite parabolic.

        The orbit W(Psi).Psi is closed up inside Phi_ambient; a positive root of the orbit is
        simple exactly when its reflection sends no other positive orbit root negative.
        """
        self._require_finite(frozenset(ambient))
        generators = [beta.positive() for beta in psi]
        orbit = set(generators)
        queue = list(generators)
        while queue:
            delta = queue.pop()
            for beta in generators:
                image = self.reflect(beta, delta).positive()
                if image not in orbit:
                    orbit.add(image)
                    queue.append(image)
        simple = []
        for gamma in orbit:
            flipped = sum(1 for delta in orbit if self.reflect(gamma, delta).sign() < 0)
            if flipped == 1:
                simple.append(gamma)
        return sorted(simple, key=RootVector.sort_key)
