"""Spanning tree of Y^1, the presentation of pi_1(Y; x_I), and verified group presentations.

Words are written as products of group elements: the word ``a b`` is the element a.b, so
b acts first. A path traversed e_1, ..., e_n therefore spells the word of e_n ... e_1.
"""

from __future__ import annotations

import string
from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Dict, FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple

import networkx as nx
import structlog
from sympy.combinatorics.free_groups import FreeGroup

from ..algebra.words import (
    Word,
    embed,
    from_letters,
    letter,
    spell,
    substitute,
    word_group,
    word_letters,
    word_map,
)
from ..core.exceptions import InputError, InvariantViolation, PreconditionError
from ..coxeter.geometry import GroupElement
from .cgraph import CGraph, EdgeKey, GroupoidEdge, Path, Vertex
from .tours import TwoCell, unoriented

logger = structlog.get_logger(__name__)

PREFERRED, DEFAULT, AVOIDED = 0, 1, 2


@dataclass
class SpanningTree:
    """Maximal tree of Y^1 rooted at x_I; parent[v] is the edge from the parent into v."""

    cg: CGraph
    root: Vertex
    parent: Dict[Vertex, GroupoidEdge]
    keys: FrozenSet[FrozenSet[EdgeKey]]

    def __contains__(self, edge: GroupoidEdge) -> bool:
        return unoriented(edge) in self.keys

    def from_root(self, vertex: Vertex) -> Path:
        """p_{vertex, x_I}: the tree path from the root to ``vertex``."""
        path: Path = []
        while vertex != self.root:
            edge = self.parent[vertex]
            path.append(edge)
            vertex = edge.source
        path.reverse()
        return path

    def path(self, target: Vertex, source: Vertex) -> Path:
        """p_{target, source}: the non-backtracking tree path from source to target."""
        groupoid = self.cg.groupoid
        return groupoid.reduce_path(
            groupoid.invert_path(self.from_root(source)) + self.from_root(target)
        )

    def extend(self, path: Sequence[GroupoidEdge]) -> Path:
        """(path)_{(x_I)}: close a path up to a loop at the root through the tree."""
        if not path:
            return []
        return self.path(path[0].source, self.root) + list(path) + self.path(self.root, path[-1].target)

    def is_stable(self, image: Callable[[GroupoidEdge], GroupoidEdge]) -> bool:
        """True when ``image`` maps the tree onto itself."""
        return {unoriented(image(e)) for e in self.parent.values()} == set(self.keys)


def build_tree(
    cg: CGraph,
    prefer: Iterable[EdgeKey] = (),
    avoid: Iterable[EdgeKey] = (),
) -> SpanningTree:
    """Kruskal over Y^1 with preferred edges first and avoided edges last."""
    prefer, avoid = set(prefer), set(avoid)
    known = {key for e in cg.edges.values() if not e.is_loop for key in unoriented(e)}
    unknown = sorted((prefer | avoid) - known)
    if unknown:
        raise InputError(f"edge keys not in the graph: {unknown}", details={"keys": unknown})

    edges = cg.y1_edges()
    multigraph = nx.MultiGraph()
    multigraph.add_nodes_from(range(len(cg)))
    for i, edge in enumerate(edges):
        keys = unoriented(edge)
        weight = PREFERRED if keys & prefer else AVOIDED if keys & avoid else DEFAULT
        multigraph.add_edge(cg.index[edge.source], cg.index[edge.target], key=i, weight=weight)
    chosen = [
        edges[key]
        for _, _, key in nx.minimum_spanning_edges(
            multigraph, algorithm="kruskal", weight="weight", keys=True, data=False
        )
    ]

    adjacency: Dict[Vertex, List[GroupoidEdge]] = {v: [] for v in cg.vertices}
    for edge in chosen:
        adjacency[edge.source].append(edge)
        adjacency[edge.target].append(cg.groupoid.inverse_edge(edge))
    parent: Dict[Vertex, GroupoidEdge] = {}
    queue = deque([cg.base])
    seen = {cg.base}
    while queue:
        v = queue.popleft()
        for edge in sorted(adjacency[v], key=lambda e: cg.index[e.target]):
            if edge.target not in seen:
                seen.add(edge.target)
                parent[edge.target] = edge
                queue.append(edge.target)
    if len(seen) != len(cg):
        raise InvariantViolation("Y^1 is not connected", details={"reached": len(seen)})
    avoided = [e for e in chosen if unoriented(e) & avoid]
    if avoided:
        logger.warning("tree uses avoided edges", count=len(avoided))
    tree = SpanningTree(cg, cg.base, parent, frozenset(unoriented(e) for e in chosen))
    logger.info("spanning tree built", edges=len(chosen))
    return tree


def generator_names(count: int) -> List[str]:
    if count <= 26:
        return list(string.ascii_lowercase[:count])
    return [f"y{i}" for i in range(1, count + 1)]


@dataclass
class Pi1Generator:
    index: int
    name: str
    edge: GroupoidEdge
    path: Tuple[GroupoidEdge, ...]
    element: GroupElement
    inverse: GroupElement


@dataclass
class Pi1Presentation:
    """pi_1(Y; x_I) on the surviving non-tree edges after minimal Tietze reduction.

    ``raw_group`` has one generator per edge of Y^1; ``substitution`` sends each of them to
    its word over the surviving generators in ``group``.
    """

    tree: SpanningTree
    raw_edges: List[GroupoidEdge]
    raw_group: FreeGroup
    raw_relators: List[Word]
    generators: List[Pi1Generator]
    group: FreeGroup
    relators: List[Word]
    substitution: Dict[Word, Word]
    y1_rank: int
    cell_count: int

    def __post_init__(self) -> None:
        self._raw_index = {unoriented(e): i for i, e in enumerate(self.raw_edges, start=1)}
        self._to_survivors = word_map(
            self.raw_group, self.group, [self.substitution[g] for g in self.raw_group.generators]
        )

    @property
    def rank_if_free(self) -> Optional[int]:
        return None if self.relators else len(self.generators)

    @property
    def names(self) -> List[str]:
        return [g.name for g in self.generators]

    def word(self, *letters: int) -> Word:
        return from_letters(self.group, letters)

    def raw_letter(self, edge: GroupoidEdge) -> int:
        i = self._raw_index[unoriented(edge)]
        return i if self.raw_edges[i - 1] == edge else -i

    def path_to_word(self, path: Sequence[GroupoidEdge]) -> Word:
        """Word over the surviving generators for a path of Y^1."""
        for edge in path:
            if edge.is_loop:
                raise PreconditionError("loops are not edges of Y^1")
        raw = from_letters(self.raw_group, (self.raw_letter(e) for e in reversed(path)))
        return self._to_survivors(raw)

    def word_element(self, word: Word) -> GroupElement:
        element = self.tree.cg.groupoid.geometry.identity()
        for index in word_letters(word):
            g = self.generators[abs(index) - 1]
            element = element * (g.element if index > 0 else g.inverse)
        return element

    def spell(self, word: Word) -> str:
        return spell(word)

    def identity(self) -> GroupElement:
        return self.tree.cg.groupoid.geometry.identity()

    def as_group_presentation(self) -> "GroupPresentation":
        presentation = GroupPresentation(
            names=list(self.names),
            elements=[g.element for g in self.generators],
            inverses=[g.inverse for g in self.generators],
            identity=self.identity(),
        )
        for relator in self.relators:
            presentation.add("Y", relator, self.group.identity)
        return presentation


def _eliminate(
    relators: List[Word], protected: Set[Word]
) -> Tuple[List[Word], Dict[Word, Word]]:
    """Drop generators occurring exactly once in some relator, recording their images."""
    substitution: Dict[Word, Word] = {}
    relators = [r.cyclic_reduction() for r in relators if not r.is_identity]
    changed = True
    while changed:
        changed = False
        for r_index, relator in enumerate(relators):
            group = relator.group
            candidates = sorted(
                relator.contains_generators(), key=group.generators.index, reverse=True
            )
            single = [
                g for g in candidates if relator.generator_count(g) == 1 and g not in protected
            ]
            if not single:
                continue
            g = single[0]
            sign = relator.exponent_sum(g)
            position = relator.index(g if sign > 0 else g**-1)
            before = relator.subword(0, position)
            after = relator.subword(position + 1, len(relator))
            # before . g^sign . after = 1
            image = before**-1 * after**-1 if sign > 0 else after * before
            substitution = {k: substitute(v, g, image) for k, v in substitution.items()}
            substitution[g] = image
            relators = [
                substitute(r, g, image).cyclic_reduction()
                for i, r in enumerate(relators) if i != r_index
            ]
            relators = [r for r in relators if not r.is_identity]
            changed = True
            break
    return relators, substitution


def pi1_presentation(cg: CGraph, tree: SpanningTree, cells: Sequence[TwoCell]) -> Pi1Presentation:
    """Generators: Y^1 edges; relators: tree edges and 2-cell boundaries; then Tietze."""
    raw_edges = cg.y1_edges()
    raw_group = word_group(tuple(f"e{i}" for i in range(1, len(raw_edges) + 1)))
    index = {unoriented(e): i for i, e in enumerate(raw_edges, start=1)}

    def raw_letter(edge: GroupoidEdge) -> int:
        i = index[unoriented(edge)]
        return i if raw_edges[i - 1] == edge else -i

    raw_relators = [letter(raw_group, index[unoriented(e)]) for e in raw_edges if e in tree]
    raw_relators += [
        from_letters(raw_group, (raw_letter(e) for e in reversed(c.boundary))) for c in cells
    ]
    relators, substitution = _eliminate(raw_relators, protected=set())

    survivors = [g for g in raw_group.generators if g not in substitution]
    names = generator_names(len(survivors))
    group = word_group(tuple(names))
    renaming = word_map(
        raw_group,
        group,
        [
            group.generators[survivors.index(g)] if g in survivors else group.identity
            for g in raw_group.generators
        ],
    )
    groupoid = cg.groupoid
    generators: List[Pi1Generator] = []
    for new, old in enumerate(survivors, start=1):
        edge = raw_edges[raw_group.generators.index(old)]
        path = tree.extend([edge])
        generators.append(
            Pi1Generator(
                new,
                names[new - 1],
                edge,
                tuple(path),
                groupoid.path_element(path),
                groupoid.path_element(groupoid.invert_path(path)),
            )
        )
    final_substitution = {old: renaming(word) for old, word in substitution.items()}
    final_substitution.update({old: renaming(old) for old in survivors})
    presentation = Pi1Presentation(
        tree=tree,
        raw_edges=raw_edges,
        raw_group=raw_group,
        raw_relators=raw_relators,
        generators=generators,
        group=group,
        relators=[renaming(r) for r in relators],
        substitution=final_substitution,
        y1_rank=len(raw_edges) - len(cg) + 1,
        cell_count=len(cells),
    )
    for relator in presentation.relators:
        if not presentation.word_element(relator).is_identity():
            raise InvariantViolation(
                "pi_1 relator is not the identity", details={"relator": spell(relator)}
            )
    logger.info(
        "fundamental group presented",
        generators=len(generators),
        relators=len(presentation.relators),
        y1_rank=presentation.y1_rank,
    )
    return presentation


# -- verified presentations ----------------------------------------------


@dataclass
class Relation:
    """lhs = rhs in a presented group, tagged by the rule that produced it."""

    kind: str
    lhs: Word
    rhs: Word

    @property
    def relator(self) -> Word:
        return (self.lhs * self.rhs**-1).cyclic_reduction()


@dataclass
class GroupPresentation:
    """A presentation whose generators carry matrices; every relation is checked on them."""

    names: List[str]
    elements: List[GroupElement]
    inverses: List[GroupElement]
    identity: GroupElement
    relations: List[Relation] = field(default_factory=list)

    def __post_init__(self) -> None:
        self.group = word_group(tuple(self.names))

    def word(self, *letters: int) -> Word:
        return from_letters(self.group, letters)

    def embed(self, word: Word) -> Word:
        """A word over a prefix of the generators, such as a Y_I word, read in this group."""
        return embed(word, self.group)

    def word_element(self, word: Word) -> GroupElement:
        element = self.identity
        for index in word_letters(word):
            element = element * (
                self.elements[index - 1] if index > 0 else self.inverses[-index - 1]
            )
        return element

    def add(self, kind: str, lhs: Word, rhs: Word) -> Relation:
        lhs, rhs = self.embed(lhs), self.embed(rhs)
        relation = Relation(kind, lhs, rhs)
        if self.word_element(lhs) != self.word_element(rhs):
            raise InvariantViolation(
                "presented relation fails in W",
                details={"kind": kind, "lhs": spell(lhs), "rhs": spell(rhs)},
            )
        self.relations.append(relation)
        return relation

    def spell(self, word: Word) -> str:
        return spell(word)

    @property
    def relators(self) -> List[Word]:
        return [r.relator for r in self.relations if not r.relator.is_identity]


@dataclass(frozen=True)
class DihedralWitness:
    """Involutions a' = g.a and b' = g generating an infinite dihedral group."""

    a_prime: Word
    b_prime: Word


def _rotations(word: Word) -> Set[Tuple[int, ...]]:
    return {word_letters(c) for w in (word, word**-1) for c in w.cyclic_conjugates()}


def recognize_infinite_dihedral(
    presentation: GroupPresentation, power_cap: int = 24
) -> Optional[DihedralWitness]:
    """Detect <a, g | g a g^-1 a, g^2> and certify it by matrices."""
    if len(presentation.names) != 2:
        return None
    orbit: Set[Tuple[int, ...]] = set()
    for relator in presentation.relators:
        orbit |= _rotations(relator)
    for a, g in ((1, 2), (2, 1)):
        if (g, g) not in orbit and (-g, -g) not in orbit:
            continue
        conjugation = {(g, a, -g, a), (g, a, g, a)}
        if not conjugation & orbit:
            continue
        a_prime, b_prime = presentation.word(g, a), presentation.word(g)
        elements = [presentation.word_element(a_prime), presentation.word_element(b_prime)]
        if not all((e * e).is_identity() for e in elements):
            continue
        product = elements[0] * elements[1]
        power = product
        for _ in range(power_cap):
            if power.is_identity():
                break
            power = power * product
        else:
            return DihedralWitness(a_prime, b_prime)
    return None
