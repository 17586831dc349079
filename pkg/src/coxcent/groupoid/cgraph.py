"""The groupoid C: tuple vertices, generators w_x^s, the graph of generators and its BFS.

A vertex is a duplicate-free tuple of generator indices. The generator w_x^s is defined
when K = [x]_~s is of finite type; it equals w_0(K) w_0(K - {s}) and maps alpha_{x_l} to
alpha_{y_l} for its target y. Paths are lists of edges in the order they are traversed,
so the element of a path e_1, ..., e_n is e_n ... e_1.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import structlog

from ..core.exceptions import (
    CoxcentError,
    GraphTooLargeError,
    InputError,
    InvariantViolation,
    PreconditionError,
)
from ..coxeter.geometry import GroupElement, RootVector
from ..coxeter.graph import CoxeterGraph
from ..coxeter.system import CoxeterSystem

logger = structlog.get_logger(__name__)

Vertex = Tuple[int, ...]
EdgeKey = Tuple[Vertex, int]
Path = List["GroupoidEdge"]


@dataclass(frozen=True, eq=False)
class GroupoidEdge:
    """The generator w_x^s with its target and its partner phi(x, s) = (y, t)."""

    source: Vertex
    s: int
    target: Vertex
    element: GroupElement
    partner: EdgeKey
    loop_root: Optional[RootVector] = None

    @property
    def key(self) -> EdgeKey:
        return (self.source, self.s)

    @property
    def is_loop(self) -> bool:
        return self.target == self.source

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GroupoidEdge):
            return NotImplemented
        return self.key == other.key

    def __hash__(self) -> int:
        return hash(self.key)

    def __repr__(self) -> str:
        return f"w[{self.source}; {self.s}] -> {self.target}"


def expand_generator(system: CoxeterSystem, x: Vertex, s: int) -> Optional[GroupoidEdge]:
    """w_x^s, or None when [x]_~s is not of finite type (no such generator)."""
    members = frozenset(x)
    if s in members:
        raise PreconditionError(f"generator {s} already occurs in vertex {x}")
    closure = system.tilde(members, {s})
    if not system.is_finite_type(closure):
        return None

    rest = closure - {s}
    inner = system.diagram_action(rest)
    outer = system.diagram_action(closure)
    target = tuple(outer[inner[v]] if v in closure else v for v in x)
    geometry = system.geometry
    element = system.w0(closure) * system.w0(rest)

    for source_entry, target_entry in zip(x, target):
        if element.column(source_entry) != geometry.simple_root(target_entry):
            raise InvariantViolation(
                "generator does not map the source simple roots onto the target's",
                details={"vertex": x, "s": s},
            )
    (t,) = (members | {s}) - frozenset(target)

    # roots of Phi_{[x] u {s}} orthogonal to Pi_[x] all live in Phi_K
    local = [v for v in x if v in closure]
    orthogonal = [
        gamma
        for gamma in geometry.positive_roots(closure)
        if all(geometry.inner(gamma, geometry.simple_root(v)).is_zero for v in local)
    ]
    loop_root = None
    if target == x:
        if len(orthogonal) != 1:
            raise InvariantViolation(
                "loop generator without a unique orthogonal root",
                details={"vertex": x, "s": s, "candidates": len(orthogonal)},
            )
        loop_root = orthogonal[0]
        if geometry.reflection(loop_root) != element:
            raise InvariantViolation(
                "loop generator differs from the reflection along its root",
                details={"vertex": x, "s": s},
            )
    elif orthogonal:
        raise InvariantViolation(
            "non-loop generator with roots orthogonal to its source",
            details={"vertex": x, "s": s},
        )
    return GroupoidEdge(x, s, target, element, (target, t), loop_root)


class Groupoid:
    """Memoized access to generators of C and path algebra over them."""

    def __init__(self, system: CoxeterSystem) -> None:
        self.system = system
        self.geometry = system.geometry
        self._edges: Dict[EdgeKey, Optional[GroupoidEdge]] = {}

    def expand(self, x: Vertex, s: int) -> Optional[GroupoidEdge]:
        key = (x, s)
        if key not in self._edges:
            self._edges[key] = expand_generator(self.system, x, s)
        return self._edges[key]

    def edge(self, x: Vertex, s: int) -> GroupoidEdge:
        edge = self.expand(x, s)
        if edge is None:
            raise PreconditionError(f"generator w_x^s undefined for x={x}, s={s}")
        return edge

    def inverse_edge(self, edge: GroupoidEdge) -> GroupoidEdge:
        return self.edge(*edge.partner)

    def out_edges(self, x: Vertex) -> List[GroupoidEdge]:
        members = set(x)
        found = (self.expand(x, s) for s in range(self.system.rank) if s not in members)
        return [e for e in found if e is not None]

    # -- paths ---------------------------------------------------------

    def path_element(self, path: Sequence[GroupoidEdge]) -> GroupElement:
        element = self.geometry.identity()
        for edge in path:
            element = edge.element * element
        return element

    def invert_path(self, path: Sequence[GroupoidEdge]) -> Path:
        return [self.inverse_edge(e) for e in reversed(path)]

    def reduce_path(self, path: Iterable[GroupoidEdge]) -> Path:
        """Cancel adjacent e, phi(e) pairs."""
        stack: Path = []
        for edge in path:
            if stack and stack[-1].partner == edge.key:
                stack.pop()
            else:
                stack.append(edge)
        return stack

    # -- standard expressions -------------------------------------------

    def target_of(self, w: GroupElement, source: Vertex) -> Vertex:
        """The vertex y with w in C_{y, source}; raises when w is not in C."""
        target = []
        for v in source:
            column = w.column(v)
            support = column.support
            if len(support) != 1:
                raise PreconditionError("element does not map the source onto simple roots")
            (u,) = support
            if column != self.geometry.simple_root(u):
                raise PreconditionError("element does not map the source onto simple roots")
            target.append(u)
        return tuple(target)

    def standard_expression(
        self, w: GroupElement, source: Vertex, prefer_last: Optional[int] = None
    ) -> Path:
        """Length-additive factorization of w into generators, first-applied factor first."""
        self.target_of(w, source)
        current, x = w, source
        factors: Path = []
        while not current.is_identity():
            members = set(x)
            descents = [
                s for s in range(self.system.rank)
                if s not in members and current.column(s).sign() < 0
            ]
            if not descents:
                raise PreconditionError("element is not in the groupoid C")
            s = prefer_last if (not factors and prefer_last in descents) else descents[0]
            edge = self.expand(x, s)
            if edge is None:
                raise InvariantViolation(
                    "right descent outside the generator domain", details={"vertex": x, "s": s}
                )
            factors.append(edge)
            current = current * self.inverse_edge(edge).element
            x = edge.target
        return factors

    def lp(self, w: GroupElement, source: Vertex) -> int:
        """|Phi^{perp [source]}[w]|: inversions of w orthogonal to Pi_[source]."""
        self.target_of(w, source)
        geometry = self.geometry
        _, inversions = geometry.length_and_inversions(w)
        simple = [geometry.simple_root(v) for v in source]
        return sum(
            1 for gamma in inversions
            if all(geometry.inner(gamma, alpha).is_zero for alpha in simple)
        )


def parse_edge_key(text: str, graph: CoxeterGraph) -> EdgeKey:
    """``s2,s4,s5>s3`` -> ((i(s2), i(s4), i(s5)), i(s3))."""
    vertex_text, sep, generator = text.strip().partition(">")
    if not sep or not generator.strip():
        raise InputError(f"edge key {text!r} must look like 'v1,v2,...>s'")
    try:
        vertex = tuple(graph.index(name.strip()) for name in vertex_text.split(",") if name.strip())
        return vertex, graph.index(generator.strip())
    except CoxcentError as exc:
        raise InputError(f"edge key {text!r}: {exc.message}") from exc


def format_edge_key(key: EdgeKey, graph: CoxeterGraph) -> str:
    vertex, s = key
    return ",".join(graph.generators[v] for v in vertex) + ">" + graph.generators[s]


def loop_root(groupoid: Groupoid, x: Vertex, s: int) -> RootVector:
    """gamma(x, s) for a loop generator."""
    edge = groupoid.edge(x, s)
    if edge.loop_root is None:
        raise PreconditionError(f"w_x^s is not a loop for x={x}, s={s}")
    return edge.loop_root


class CGraph:
    """Connected component of the generator graph containing x_I."""

    def __init__(
        self,
        groupoid: Groupoid,
        base: Vertex,
        vertices: List[Vertex],
        edges: Dict[EdgeKey, GroupoidEdge],
    ) -> None:
        self.groupoid = groupoid
        self.system = groupoid.system
        self.base = base
        self.vertices = vertices
        self.index: Dict[Vertex, int] = {v: i for i, v in enumerate(vertices)}
        self.edges = edges

    def __len__(self) -> int:
        return len(self.vertices)

    def __contains__(self, vertex: object) -> bool:
        return vertex in self.index

    def edge(self, x: Vertex, s: int) -> GroupoidEdge:
        try:
            return self.edges[(x, s)]
        except KeyError:
            raise PreconditionError(f"no edge w_x^s in the graph for x={x}, s={s}") from None

    def out_edges(self, x: Vertex) -> List[GroupoidEdge]:
        return [self.edges[(x, s)] for s in range(self.system.rank) if (x, s) in self.edges]

    def edge_order(self, edge: GroupoidEdge) -> Tuple[int, int]:
        return (self.index[edge.source], edge.s)

    def representative(self, edge: GroupoidEdge) -> GroupoidEdge:
        """The orientation of an unoriented edge with the smaller (vertex index, s) key."""
        partner = self.groupoid.inverse_edge(edge)
        return edge if self.edge_order(edge) <= self.edge_order(partner) else partner

    def loops(self) -> List[GroupoidEdge]:
        return sorted((e for e in self.edges.values() if e.is_loop), key=self.edge_order)

    def y1_edges(self) -> List[GroupoidEdge]:
        """Unoriented non-loop edges, one representative each, in a fixed order."""
        found = {self.representative(e) for e in self.edges.values() if not e.is_loop}
        return sorted(found, key=self.edge_order)

    def vertex_label(self, vertex: Vertex) -> str:
        return "(" + ",".join(self.system.graph.generators[v] for v in vertex) + ")"

    def split_CI(self, w: GroupElement) -> Tuple[List[RootVector], GroupElement]:
        """w = (s_{w_1.gamma_1} ... s_{w_n.gamma_n}) y with y of loop length zero."""
        if self.groupoid.target_of(w, self.base) != self.base:
            raise PreconditionError("element does not fix x_I")
        factors = self.groupoid.standard_expression(w, self.base)
        geometry = self.groupoid.geometry
        prefix = geometry.identity()
        roots: List[RootVector] = []
        for edge in reversed(factors):
            if edge.is_loop:
                roots.append(prefix.apply(edge.loop_root).positive())  # type: ignore[arg-type]
            else:
                prefix = prefix * edge.element
        product = geometry.identity()
        for gamma in roots:
            product = product * geometry.reflection(gamma)
        if product * prefix != w:
            raise InvariantViolation("split of a C_I element does not recompose")
        return roots, prefix


def build_cgraph(
    system: CoxeterSystem, x_I: Sequence[int], vertex_budget: int = 1_000_000,
    groupoid: Optional[Groupoid] = None,
) -> CGraph:
    """BFS from x_I over all defined generators."""
    base: Vertex = tuple(x_I)
    if len(set(base)) != len(base):
        raise PreconditionError("x_I must be duplicate-free")
    groupoid = groupoid or Groupoid(system)
    vertices: List[Vertex] = [base]
    seen = {base}
    edges: Dict[EdgeKey, GroupoidEdge] = {}
    queue = deque([base])
    while queue:
        x = queue.popleft()
        for edge in groupoid.out_edges(x):
            edges[edge.key] = edge
            if edge.target not in seen:
                if len(vertices) >= vertex_budget:
                    raise GraphTooLargeError(
                        f"graph too large: more than {vertex_budget} vertices",
                        details={"budget": vertex_budget},
                    )
                seen.add(edge.target)
                vertices.append(edge.target)
                queue.append(edge.target)

    for edge in edges.values():
        partner = edges.get(edge.partner)
        if partner is None or partner.partner != edge.key:
            raise InvariantViolation("phi is not an involution", details={"edge": edge.key})
        if not (partner.element * edge.element).is_identity():
            raise InvariantViolation("w_x^s w_y^t is not the identity", details={"edge": edge.key})

    cg = CGraph(groupoid, base, vertices, edges)
    logger.info(
        "groupoid graph built",
        vertices=len(vertices),
        loops=len(cg.loops()),
        edges=len(cg.y1_edges()),
    )
    return cg
