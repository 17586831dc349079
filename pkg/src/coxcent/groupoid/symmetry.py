"""Outer symmetries: half-turns g_A on the centralizer side, tuple permutations h_rho on the
normalizer side, their presentations and their actions on W^perp I.

Both kinds of symmetry act on the graph C by permuting tuple positions: the image of a
vertex y is (y[p_0], y[p_1], ...) for the position array p, and the image of w_y^s is
w_{image(y)}^s. Positions of Lambda are 0-based; reports shift them by one.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple, Union

import structlog
from sympy.combinatorics import Permutation, PermutationGroup

from ..algebra.words import Word, word_letters
from ..core.exceptions import CoxcentError, InvariantViolation
from ..coxeter.geometry import GroupElement, RootVector
from .cgraph import CGraph, GroupoidEdge, Path, Vertex
from .presentations import (
    DihedralWitness,
    GroupPresentation,
    Pi1Presentation,
    SpanningTree,
    recognize_infinite_dihedral,
)
from .wperp import FinitePartReport, Verdict, WPerpGenerator, WPerpWindow

logger = structlog.get_logger(__name__)

Positions = Tuple[int, ...]


class PositionAction:
    """Vertex, edge and path maps induced by a position array."""

    positions: Positions

    def vertex(self, y: Vertex) -> Vertex:
        return tuple(y[p] for p in self.positions)

    def edge(self, cg: CGraph, edge: GroupoidEdge) -> GroupoidEdge:
        return cg.edge(self.vertex(edge.source), edge.s)

    def path(self, cg: CGraph, path: Sequence[GroupoidEdge]) -> Path:
        return [self.edge(cg, e) for e in path]


def _one_based(positions: FrozenSet[int]) -> str:
    return "[" + ",".join(str(p + 1) for p in sorted(positions)) + "]"


# -- half-turns ------------------------------------------------------------


@dataclass(frozen=True)
class HalfTurn(PositionAction):
    """g_A = p_{x_I, x_I^A} w_0((x_I)_A) with tau_A given by the involution sigma_A."""

    A: FrozenSet[int]
    positions: Positions
    target: Vertex
    element: GroupElement
    inverse: GroupElement

    @property
    def name(self) -> str:
        return "g" + _one_based(self.A)


@dataclass
class AGroups:
    """A-tilde = A x A' as lists of half-turns, each in enumeration order."""

    tilde: List[HalfTurn]
    a: List[HalfTurn]
    a_prime: List[HalfTurn]
    minus_one_components: List[FrozenSet[int]]

    def __post_init__(self) -> None:
        self._by_set = {h.A: h for h in self.tilde}

    def get(self, A: FrozenSet[int]) -> Optional[HalfTurn]:
        return self._by_set.get(frozenset(A))

    @property
    def center(self) -> List[HalfTurn]:
        """w_0 of each (-1)-type component of I; together they generate Z(W_I)."""
        return [self._by_set[c] for c in self.minus_one_components]


def lambda_components(cg: CGraph) -> List[FrozenSet[int]]:
    """Irreducible components of Lambda as position sets, ordered by smallest position."""
    base = cg.base
    where = {v: i for i, v in enumerate(base)}
    parts = [frozenset(where[v] for v in c) for c in cg.system.components(base)]
    return sorted(parts, key=min)


def a_set(cg: CGraph, w: GroupElement) -> FrozenSet[int]:
    """A(w): positions whose simple root w negates."""
    geometry = cg.groupoid.geometry
    return frozenset(
        i for i, v in enumerate(cg.base) if w.column(v) == -geometry.simple_root(v)
    )


def _check_automorphism(cg: CGraph, action: PositionAction, label: str) -> None:
    for y in cg.vertices:
        if action.vertex(y) not in cg:
            raise InvariantViolation(
                f"{label} does not map the graph onto itself", details={"vertex": y}
            )
    for edge in cg.edges.values():
        image = cg.edges.get((action.vertex(edge.source), edge.s))
        if image is None or image.target != action.vertex(edge.target):
            raise InvariantViolation(
                f"{label} does not map edges to edges", details={"edge": edge.key}
            )


def _check_tau_relation(cg: CGraph, turn: HalfTurn) -> None:
    """w_0(z_A) w w_0(y_A) = tau_A(w) on every edge w in C_{z, y}."""
    system = cg.system
    w0_cache: Dict[Vertex, GroupElement] = {}

    def w0_at(y: Vertex) -> GroupElement:
        if y not in w0_cache:
            w0_cache[y] = system.w0(y[i] for i in turn.A)
        return w0_cache[y]

    for edge in cg.edges.values():
        if w0_at(edge.target) * edge.element * w0_at(edge.source) != turn.edge(cg, edge).element:
            raise InvariantViolation(
                "half-turn relation fails on an edge", details={"A": sorted(turn.A), "edge": edge.key}
            )


def compute_A_groups(cg: CGraph, tree: SpanningTree) -> AGroups:
    """Enumerate A-tilde over unions of finite-type components of Lambda."""
    system, groupoid = cg.system, cg.groupoid
    base = cg.base
    components = [c for c in lambda_components(cg) if system.is_finite_type(base[i] for i in c)]
    minus_one_components = [
        c for c in components if system.is_minus_one_component(base[j] for j in c)
    ]
    minus_one = frozenset().union(*minus_one_components)

    tilde: List[HalfTurn] = []
    for size in range(len(components) + 1):
        for chosen in combinations(components, size):
            A = frozenset().union(*chosen)
            generators = [base[i] for i in sorted(A)]
            action = system.diagram_action(generators) if generators else {}
            target = tuple(action.get(v, v) for v in base)
            if target not in cg:
                continue
            positions = tuple(base.index(v) for v in target)
            element = groupoid.path_element(tree.path(base, target)) * system.w0(generators)
            turn = HalfTurn(A, positions, target, element, groupoid.geometry.inverse(element))
            if a_set(cg, element) != A:
                raise InvariantViolation("A(g_A) differs from A", details={"A": sorted(A)})
            _check_automorphism(cg, turn, turn.name)
            _check_tau_relation(cg, turn)
            tilde.append(turn)

    a = [h for h in tilde if not h.A & minus_one]
    a_prime = [h for h in tilde if h.A <= minus_one]
    if len(tilde) != len(a) * len(a_prime):
        raise InvariantViolation(
            "A-tilde is not the product of A and A'",
            details={"tilde": len(tilde), "a": len(a), "a_prime": len(a_prime)},
        )
    logger.info("half-turns computed", tilde=len(tilde), a=len(a), a_prime=len(a_prime))
    return AGroups(tilde, a, a_prime, minus_one_components)


def a_basis(a: Sequence[HalfTurn]) -> List[HalfTurn]:
    """Greedy basis of the elementary abelian 2-group A in enumeration order."""
    span = {frozenset()}
    basis: List[HalfTurn] = []
    for turn in a:
        if turn.A in span:
            continue
        basis.append(turn)
        span |= {s ^ turn.A for s in span}
    return basis


# -- presentations ---------------------------------------------------------


def word_path(pi1: Pi1Presentation, word: Word) -> Path:
    """Closed path at x_I spelling a Y_I word."""
    groupoid = pi1.tree.cg.groupoid
    path: Path = []
    for letter in reversed(word_letters(word)):
        g = pi1.generators[abs(letter) - 1]
        path.extend(g.path if letter > 0 else groupoid.invert_path(g.path))
    return path


def _closed_word(pi1: Pi1Presentation, path: Sequence[GroupoidEdge]) -> Word:
    return pi1.path_to_word(pi1.tree.extend(path))


@dataclass
class CocycleRelation:
    """g_A g_A' = c g_{AA'} for a Y_I word c; the symbols play the same role for h_rho."""

    left: str
    right: str
    product: str
    correction: Word


@dataclass
class BPresentation:
    presentation: GroupPresentation
    basis: List[HalfTurn]
    tree_stable: bool
    cocycles: List[CocycleRelation]
    dihedral: Optional[DihedralWitness]

    @property
    def splits(self) -> Optional[bool]:
        """True when g is visibly a homomorphism; None when undecided."""
        if self.tree_stable or all(c.correction.is_identity for c in self.cocycles):
            return True
        return None


def _base_presentation(pi1: Pi1Presentation, extra: Sequence[Tuple[str, GroupElement, GroupElement]]) -> GroupPresentation:
    presentation = GroupPresentation(
        names=list(pi1.names) + [name for name, _, _ in extra],
        elements=[g.element for g in pi1.generators] + [e for _, e, _ in extra],
        inverses=[g.inverse for g in pi1.generators] + [i for _, _, i in extra],
        identity=pi1.identity(),
    )
    for relator in pi1.relators:
        presentation.add("Y", relator, pi1.group.identity)
    return presentation


def cocycle_relations(cg: CGraph, pi1: Pi1Presentation, groups: AGroups) -> List[CocycleRelation]:
    """g_A g_A' = tau_A(p_{x_I, x_I^A'})_{(x_I)} g_{AA'} for every ordered pair of A-tilde."""
    tree = pi1.tree
    relations: List[CocycleRelation] = []
    for left in groups.tilde:
        for right in groups.tilde:
            product = groups.get(left.A ^ right.A)
            if product is None:
                raise InvariantViolation(
                    "A-tilde is not closed under symmetric difference",
                    details={"A": sorted(left.A), "A'": sorted(right.A)},
                )
            correction = _closed_word(pi1, left.path(cg, tree.path(cg.base, right.target)))
            if left.element * right.element != pi1.word_element(correction) * product.element:
                raise InvariantViolation(
                    "cocycle relation fails in W",
                    details={"A": sorted(left.A), "A'": sorted(right.A)},
                )
            relations.append(CocycleRelation(left.name, right.name, product.name, correction))
    return relations


def b_presentation(
    cg: CGraph, pi1: Pi1Presentation, groups: AGroups, power_cap: int = 24
) -> BPresentation:
    """B_I on the pi_1 generators and g_A for a basis of A."""
    tree = pi1.tree
    base = cg.base
    basis = a_basis(groups.a)
    presentation = _base_presentation(pi1, [(h.name, h.element, h.inverse) for h in basis])
    offset = len(pi1.generators)
    letters = {h.A: offset + i for i, h in enumerate(basis, start=1)}

    for turn in basis:
        g = letters[turn.A]
        for q in pi1.generators:
            image = _closed_word(pi1, turn.path(cg, q.path))
            presentation.add("conjugation", presentation.word(g, q.index, -g), image)
        square = _closed_word(pi1, turn.path(cg, tree.path(base, turn.target)))
        presentation.add("square", presentation.word(g, g), square)
    for first, second in combinations(basis, 2):
        g, h = letters[first.A], letters[second.A]
        rhs = _closed_word(pi1, first.path(cg, tree.path(base, second.target))) * _closed_word(
            pi1, second.path(cg, tree.path(first.target, base))
        )
        presentation.add("commutator", presentation.word(g, h, -g, -h), rhs)

    stable = all(tree.is_stable(lambda e, t=turn: t.edge(cg, e)) for turn in groups.a)
    result = BPresentation(
        presentation,
        basis,
        stable,
        cocycle_relations(cg, pi1, groups),
        recognize_infinite_dihedral(presentation, power_cap),
    )
    logger.info(
        "B_I presented",
        generators=len(presentation.names),
        relations=len(presentation.relations),
        splits=result.splits,
        dihedral=result.dihedral is not None,
    )
    return result


# -- normalizer side -----------------------------------------------------


def _compose(rho: Permutation, sigma: Permutation) -> Permutation:
    """rho o sigma: sigma first."""
    return sigma * rho


@dataclass(frozen=True)
class NormalizerSymmetry(PositionAction):
    """rho in A_N with h_rho = p_{x_I, rho(x_I)}."""

    rho: Permutation
    positions: Positions
    target: Vertex
    element: GroupElement
    inverse: GroupElement

    @property
    def name(self) -> str:
        return "h[" + ",".join(str(self.rho(i) + 1) for i in range(self.rho.size)) + "]"

    @property
    def key(self) -> Positions:
        return tuple(self.rho.array_form)


def _permutation(positions: Positions) -> Permutation:
    """rho with rho^-1 = positions, so that rho(y)_l = y_{rho^-1(l)}."""
    return ~Permutation(list(positions)) if positions else Permutation([])


@dataclass
class NormalizerAssembly:
    symmetries: List[NormalizerSymmetry]
    generators: List[NormalizerSymmetry]
    fundamental: List[Tuple[NormalizerSymmetry, ...]]
    presentation: GroupPresentation
    tree_stable: bool
    cocycles: List[CocycleRelation]
    dihedral: Optional[DihedralWitness]

    def get(self, rho: Permutation) -> Optional[NormalizerSymmetry]:
        key = tuple(rho.array_form)
        return next((s for s in self.symmetries if s.key == key), None)

    @property
    def splits(self) -> Optional[bool]:
        if self.tree_stable or all(c.correction.is_identity for c in self.cocycles):
            return True
        return None


def _normalizer_symmetries(cg: CGraph, tree: SpanningTree) -> List[NormalizerSymmetry]:
    base = cg.base
    groupoid = cg.groupoid
    vertices = [v for v in cg.vertices if set(v) == set(base)]
    symmetries = []
    for v in vertices:
        positions = tuple(base.index(u) for u in v)
        element = groupoid.path_element(tree.path(base, v))
        symmetry = NormalizerSymmetry(
            _permutation(positions), positions, v, element, groupoid.geometry.inverse(element)
        )
        if symmetry.vertex(base) != v:
            raise InvariantViolation("rho(x_I) differs from its vertex", details={"vertex": v})
        symmetries.append(symmetry)
    if len({s.key for s in symmetries}) != len(vertices):
        raise InvariantViolation("A_N is not in bijection with the vertices over I")
    for symmetry in symmetries:
        _check_automorphism(cg, symmetry, symmetry.name)
        for edge in cg.edges.values():
            if symmetry.edge(cg, edge).element != edge.element:
                raise InvariantViolation(
                    "rho moves the element of an edge", details={"edge": edge.key}
                )
    return symmetries


def _generating_set(symmetries: Sequence[NormalizerSymmetry]) -> List[NormalizerSymmetry]:
    chosen: List[NormalizerSymmetry] = []
    for symmetry in sorted(symmetries, key=lambda s: s.key):
        if symmetry.rho.is_Identity:
            continue
        if chosen and PermutationGroup([c.rho for c in chosen]).contains(symmetry.rho):
            continue
        chosen.append(symmetry)
    return chosen


def _fundamental_relations(
    symmetries: Sequence[NormalizerSymmetry], generators: Sequence[NormalizerSymmetry]
) -> List[Tuple[NormalizerSymmetry, ...]]:
    """Order relators and Cayley-graph relators, all as positive products equal to 1."""
    by_key = {s.key: s for s in symmetries}

    def positive_inverse(word: Sequence[NormalizerSymmetry]) -> List[NormalizerSymmetry]:
        out: List[NormalizerSymmetry] = []
        for s in reversed(word):
            out.extend([s] * (s.rho.order() - 1))
        return out

    relations: List[Tuple[NormalizerSymmetry, ...]] = [
        tuple([g] * g.rho.order()) for g in generators
    ]
    if not generators:
        return relations
    identity = next(s for s in symmetries if s.rho.is_Identity)
    words: Dict[Positions, List[NormalizerSymmetry]] = {identity.key: []}
    queue = [identity]
    while queue:
        current = queue.pop(0)
        for g in generators:
            product = by_key[tuple(_compose(current.rho, g.rho).array_form)]
            word = words[current.key] + [g]
            if product.key not in words:
                words[product.key] = word
                queue.append(product)
            elif words[product.key] != word:
                relations.append(tuple(word + positive_inverse(words[product.key])))
    unique: List[Tuple[NormalizerSymmetry, ...]] = []
    for relation in relations:
        if relation not in unique:
            unique.append(relation)
    return unique


def _sequence_path(
    cg: CGraph, tree: SpanningTree, sequence: Sequence[NormalizerSymmetry], lookup: Dict[Positions, NormalizerSymmetry]
) -> Tuple[Path, NormalizerSymmetry]:
    """Traversal of p_{x_I,rho_1 x_I} rho_[1](p_{x_I,rho_2 x_I}) ... p_{rho_[k] x_I, x_I}."""
    base = cg.base
    prefix = lookup[tuple(range(len(base)))]
    segments: List[Path] = []
    for symmetry in sequence:
        segments.append(prefix.path(cg, tree.path(base, symmetry.target)))
        prefix = lookup[tuple(_compose(prefix.rho, symmetry.rho).array_form)]
    traversal = tree.path(prefix.target, base)
    for segment in reversed(segments):
        traversal.extend(segment)
    return traversal, prefix


def normalizer_assembly(cg: CGraph, pi1: Pi1Presentation, power_cap: int = 24) -> NormalizerAssembly:
    """A_N, h_rho and the presentation of Y-tilde_I."""
    tree = pi1.tree
    base = cg.base
    symmetries = _normalizer_symmetries(cg, tree)
    lookup = {s.key: s for s in symmetries}
    generators = _generating_set(symmetries)
    fundamental = _fundamental_relations(symmetries, generators)

    presentation = _base_presentation(pi1, [(h.name, h.element, h.inverse) for h in generators])
    offset = len(pi1.generators)
    letters = {h.key: offset + i for i, h in enumerate(generators, start=1)}
    for symmetry in generators:
        h = letters[symmetry.key]
        inverse = lookup[tuple((~symmetry.rho).array_form)]
        for q in pi1.generators:
            # q_{(rho(x_I))}: h_rho first, then q, then h_rho^-1
            moved = tree.path(base, symmetry.target) + list(q.path) + tree.path(symmetry.target, base)
            image = _closed_word(pi1, inverse.path(cg, moved))
            presentation.add("conjugation", presentation.word(-h, q.index, h), image)
    for relation in fundamental:
        traversal, end = _sequence_path(cg, tree, relation, lookup)
        if not end.rho.is_Identity:
            raise InvariantViolation("fundamental relation of A_N does not close")
        presentation.add(
            "symmetry",
            presentation.word(*(letters[s.key] for s in relation)),
            _closed_word(pi1, traversal),
        )

    cocycles: List[CocycleRelation] = []
    for left in symmetries:
        for right in symmetries:
            traversal, product = _sequence_path(cg, tree, (left, right), lookup)
            correction = _closed_word(pi1, traversal)
            if left.element * right.element != pi1.word_element(correction) * product.element:
                raise InvariantViolation(
                    "normalizer cocycle relation fails in W",
                    details={"rho": left.name, "rho'": right.name},
                )
            cocycles.append(CocycleRelation(left.name, right.name, product.name, correction))

    stable = all(tree.is_stable(lambda e, s=s: s.edge(cg, e)) for s in symmetries)
    assembly = NormalizerAssembly(
        symmetries,
        generators,
        fundamental,
        presentation,
        stable,
        cocycles,
        recognize_infinite_dihedral(presentation, power_cap),
    )
    logger.info(
        "normalizer assembled",
        symmetries=len(symmetries),
        generators=len(generators),
        relations=len(presentation.relations),
        splits=assembly.splits,
    )
    return assembly


# -- actions on W^perp I -----------------------------------------------------

Actor = Union[HalfTurn, NormalizerSymmetry, Word]


@dataclass(frozen=True)
class WPerpImage:
    """The class r(word, loop); index is None when it lies outside the window."""

    word: Word
    loop: GroupoidEdge
    root: RootVector
    index: Optional[int]


def act_on_wperp(
    cg: CGraph, pi1: Pi1Presentation, window: WPerpWindow, actor: Actor, gen: WPerpGenerator
) -> WPerpImage:
    """Image of r(w, xi) under conjugation, by the path formula, checked against matrices."""
    tree = pi1.tree
    if isinstance(actor, Word):
        word, loop = actor * gen.word, gen.loop
        actor_element = pi1.word_element(actor)
    else:
        y = gen.loop.source
        moved = actor.path(cg, tree.path(cg.base, y) + word_path(pi1, gen.word))
        word = _closed_word(pi1, moved)
        loop = cg.edge(actor.vertex(y), gen.loop.s)
        actor_element = actor.element
    frame = window.frame.get(loop.key)
    if frame is None:
        raise InvariantViolation("image loop has no frame root", details={"loop": loop.key})
    root = pi1.word_element(word).apply(frame).positive()
    if actor_element.apply(gen.root).positive() != root:
        raise InvariantViolation(
            "action formula disagrees with conjugation",
            details={"generator": gen.index, "word": list(word_letters(word))},
        )
    return WPerpImage(word, loop, root, window.class_of_root(root))


def action_table(
    cg: CGraph, pi1: Pi1Presentation, window: WPerpWindow, actors: Sequence[Tuple[str, Actor]]
) -> Dict[str, List[Optional[int]]]:
    """Per actor, the image index of every window generator."""
    return {
        name: [act_on_wperp(cg, pi1, window, actor, g).index for g in window.generators]
        for name, actor in actors
    }


def positive_system_check(
    window: WPerpWindow, symmetries: Sequence[Union[HalfTurn, NormalizerSymmetry]]
) -> bool:
    """Every symmetry keeps the positive roots of the window positive."""
    return all(
        s.element.apply(g.root).is_positive() for s in symmetries for g in window.generators
    )


# -- element decomposition -------------------------------------------------


@dataclass
class CentralizerDecomposition:
    """w = (s_perp[0] ... s_perp[-1]) y g_A g_A' with A in A and A' in A'."""

    word: Tuple[int, ...]
    half_turn: FrozenSet[int]
    central: FrozenSet[int]
    perp: List[RootVector]
    y_word: Word


@dataclass(frozen=True)
class NotInCentralizer:
    word: Tuple[int, ...]
    witness: int


@dataclass
class NormalizerDecomposition:
    """w = u (s_perp[0] ... s_perp[-1]) y h_rho with u in W_I."""

    word: Tuple[int, ...]
    u_word: Tuple[int, ...]
    rho: Permutation
    perp: List[RootVector]
    y_word: Word


@dataclass(frozen=True)
class NotInNormalizer:
    """w s w^-1 is outside W_I for s = witness; with ``inverse`` set, w^-1 s w is."""

    word: Tuple[int, ...]
    witness: int
    inverse: bool = False


def _split_vertex_group(
    cg: CGraph, pi1: Pi1Presentation, c: GroupElement
) -> Tuple[List[RootVector], Word]:
    perp, y = cg.split_CI(c)
    try:
        y_word = pi1.path_to_word(cg.groupoid.standard_expression(y, cg.base))
    except CoxcentError as exc:
        raise InvariantViolation("Y_I factor is not a path of Y^1", details={"reason": exc.message}) from exc
    if pi1.word_element(y_word) != y:
        raise InvariantViolation("Y_I word does not spell its factor")
    return perp, y_word


def _reflections(cg: CGraph, roots: Sequence[RootVector]) -> GroupElement:
    geometry = cg.groupoid.geometry
    product = geometry.identity()
    for gamma in roots:
        product = product * geometry.reflection(gamma)
    return product


def decompose_element(
    cg: CGraph, pi1: Pi1Presentation, groups: AGroups, word: Sequence[int]
) -> Union[CentralizerDecomposition, NotInCentralizer]:
    """Split a member of Z_W(W_I) along W^perp I, Y_I and the half-turns."""
    geometry = cg.groupoid.geometry
    w = geometry.element(word)
    for v in cg.base:
        alpha = geometry.simple_root(v)
        if w.column(v) not in (alpha, -alpha):
            return NotInCentralizer(tuple(word), v)
    A = a_set(cg, w)
    turn = groups.get(A)
    if turn is None:
        raise InvariantViolation("A(w) is not in A-tilde", details={"A": sorted(A)})
    central = frozenset().union(*(c for c in groups.minus_one_components if c <= A))
    outer, inner = groups.get(A - central), groups.get(central)
    if outer is None or inner is None:
        raise InvariantViolation("A(w) does not factor through A x A'", details={"A": sorted(A)})
    perp, y_word = _split_vertex_group(cg, pi1, w * turn.inverse)
    rebuilt = _reflections(cg, perp) * pi1.word_element(y_word) * outer.element * inner.element
    if rebuilt != w:
        raise InvariantViolation("centralizer decomposition does not recompose")
    return CentralizerDecomposition(tuple(word), outer.A, inner.A, perp, y_word)


def decompose_normalizer_element(
    cg: CGraph, pi1: Pi1Presentation, assembly: NormalizerAssembly, word: Sequence[int]
) -> Union[NormalizerDecomposition, NotInNormalizer]:
    """Split a member of N_W(W_I) as u n with n minimal in W_I n, then n along C_I and h_rho."""
    groupoid = cg.groupoid
    geometry = groupoid.geometry
    members = frozenset(cg.base)
    w = geometry.element(word)
    w_inverse = geometry.inverse(w)
    for v in cg.base:
        if not w.column(v).support <= members:
            return NotInNormalizer(tuple(word), v)
    for v in cg.base:
        if not w_inverse.column(v).support <= members:
            return NotInNormalizer(tuple(word), v, inverse=True)

    u: List[int] = []
    n = w
    while True:
        inverse = geometry.inverse(n)
        descent = next((v for v in sorted(members) if inverse.column(v).sign() < 0), None)
        if descent is None:
            break
        n = geometry.generator(descent) * n
        u.append(descent)
    target = groupoid.target_of(geometry.inverse(n), cg.base)
    symmetry = next((s for s in assembly.symmetries if s.target == target), None)
    if symmetry is None:
        raise InvariantViolation("minimal coset representative leaves A_N", details={"target": target})
    perp, y_word = _split_vertex_group(cg, pi1, n * symmetry.inverse)
    rebuilt = (
        geometry.element(u) * _reflections(cg, perp) * pi1.word_element(y_word) * symmetry.element
    )
    if rebuilt != w:
        raise InvariantViolation("normalizer decomposition does not recompose")
    return NormalizerDecomposition(tuple(word), tuple(u), symmetry.rho, perp, y_word)


# -- refined product -------------------------------------------------------


@dataclass
class RefinedDecomposition:
    """Z_W(W_I) = Z(W_I) x W^perp_fin x (W^perp_inf x| Y_I) on the window's verdicts."""

    finite_classes: List[int]
    finite_types: List[str]
    other_classes: List[int]


def refined_decomposition(
    cg: CGraph, groups: AGroups, report: FinitePartReport
) -> Optional[RefinedDecomposition]:
    """Available when every finite-type component of I is of (-1)-type, so A is trivial."""
    base = cg.base
    system = cg.system
    for component in lambda_components(cg):
        generators = [base[i] for i in component]
        if system.is_finite_type(generators) and not system.is_minus_one_component(generators):
            return None
    if len(groups.a) != 1:
        raise InvariantViolation("A is not trivial although I has only (-1)-type finite parts")
    finite = [c for c in report.components if c.verdict is Verdict.FINITE]
    finite_classes = sorted(i for c in finite for i in c.members)
    return RefinedDecomposition(
        finite_classes,
        [c.type_name or "" for c in finite],
        sorted(i for c in report.components if c.verdict is not Verdict.FINITE for i in c.members),
    )
