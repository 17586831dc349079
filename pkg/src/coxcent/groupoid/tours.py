"""Two-regular components of C(J): circular tours (2-cells) and shuttling tours.

For a vertex x and two generators s, t outside [x] with [x]_~{s,t} of finite type, the
component of C(J), J = [x] + {s, t}, through x is walked by always leaving a vertex along
the generator of J - [y] that was not used to arrive. The walk is a closed path; it is a
cycle when it meets no loops and a shuttling tour when it meets exactly two.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

import structlog

from ..coxeter.catalog import canonical_labellings
from ..coxeter.geometry import RootVector
from ..coxeter.graph import INFINITY
from ..core.exceptions import InvariantViolation, PreconditionError
from .cgraph import CGraph, EdgeKey, Groupoid, GroupoidEdge, Path, Vertex
from .tables import lookup_order

logger = structlog.get_logger(__name__)

MAX_WALK = 100_000


class Shape(str, Enum):
    CYCLE = "cycle"
    TWO_LOOPS = "two_loops"


class OrderMethod(str, Enum):
    FORMULA = "formula"
    TABLE = "table"
    COUNT = "count"


def unoriented(edge: GroupoidEdge) -> FrozenSet[EdgeKey]:
    return frozenset((edge.key, edge.partner))


@dataclass(frozen=True)
class TourComponent:
    """A component of C(J) together with one closed walk through all of it."""

    J: FrozenSet[int]
    vertices: Tuple[Vertex, ...]
    walk: Tuple[GroupoidEdge, ...]
    shape: Shape
    loops: Tuple[GroupoidEdge, ...]

    @property
    def key(self) -> Tuple[FrozenSet[int], FrozenSet[Vertex], FrozenSet[FrozenSet[EdgeKey]]]:
        return (self.J, frozenset(self.vertices), frozenset(unoriented(e) for e in self.walk))

    @property
    def edges(self) -> List[GroupoidEdge]:
        seen: Dict[FrozenSet[EdgeKey], GroupoidEdge] = {}
        for edge in self.walk:
            seen.setdefault(unoriented(edge), edge)
        return list(seen.values())

    def rotated(self, start: GroupoidEdge) -> Tuple[GroupoidEdge, ...]:
        i = self.walk.index(start)
        return self.walk[i:] + self.walk[:i]

    @property
    def connecting_path(self) -> Tuple[GroupoidEdge, ...]:
        if self.shape is not Shape.TWO_LOOPS:
            return ()
        walk = self.rotated(self.loops[0])
        return walk[1:walk.index(self.loops[1])]


@dataclass(frozen=True)
class TwoCell:
    component: TourComponent

    @property
    def boundary(self) -> Tuple[GroupoidEdge, ...]:
        return self.component.walk


@dataclass(frozen=True)
class ShuttlingTour:
    """The closed path s_beta, q, s_gamma, q^-1 starting at the loop vertex x of beta."""

    component: TourComponent
    beta_edge: GroupoidEdge
    gamma_edge: GroupoidEdge
    path_q: Tuple[GroupoidEdge, ...]
    order: int

    @property
    def beta(self) -> RootVector:
        return self.beta_edge.loop_root  # type: ignore[return-value]

    @property
    def gamma(self) -> RootVector:
        return self.gamma_edge.loop_root  # type: ignore[return-value]

    @property
    def x(self) -> Vertex:
        return self.beta_edge.source

    @property
    def y(self) -> Vertex:
        return self.gamma_edge.source

    @property
    def closed_path(self) -> Tuple[GroupoidEdge, ...]:
        return self.component.rotated(self.beta_edge)


def walk_component(groupoid: Groupoid, x: Vertex, s: int, t: int) -> Optional[TourComponent]:
    """The component of C([x] + {s, t}) through x, or None when [x]_~{s,t} is not finite type."""
    system = groupoid.system
    if s == t or s in x or t in x:
        raise PreconditionError("s and t must be distinct generators outside [x]")
    closure = system.tilde(x, {s, t})
    if not system.is_finite_type(closure):
        return None
    J = frozenset(x) | {s, t}

    walk: List[GroupoidEdge] = []
    vertices: List[Vertex] = [x]
    seen = {x}
    state = (x, s)
    while True:
        edge = groupoid.expand(*state)
        if edge is None:
            raise InvariantViolation("component of C(J) is not two-regular", details={"at": state})
        walk.append(edge)
        z = edge.target
        others = J - frozenset(z)
        if len(others) != 2 or system.tilde(z, others) != closure:
            raise InvariantViolation("J_~(J - [y]) changes along a component", details={"at": z})
        (following,) = others - {edge.partner[1]}
        state = (z, following)
        if z not in seen:
            seen.add(z)
            vertices.append(z)
        if state == (x, s):
            break
        if len(walk) > MAX_WALK:
            raise InvariantViolation("component walk does not close", details={"start": x})

    loops = tuple(e for e in walk if e.is_loop)
    if not loops:
        shape = Shape.CYCLE
    elif len(loops) == 2:
        shape = Shape.TWO_LOOPS
    else:
        raise InvariantViolation(
            "component of C(J) is neither a cycle nor a two-loop path",
            details={"start": x, "loops": len(loops)},
        )
    return TourComponent(J, tuple(vertices), tuple(walk), shape, loops)


def enumerate_components(cg: CGraph) -> List[TourComponent]:
    """Every finite two-regular component, discovered once."""
    found: Dict[object, TourComponent] = {}
    rank = cg.system.rank
    for x in cg.vertices:
        outside = [s for s in range(rank) if s not in x]
        for a, s in enumerate(outside):
            for t in outside[a + 1:]:
                component = walk_component(cg.groupoid, x, s, t)
                if component is not None and component.key not in found:
                    found[component.key] = component
    components = list(found.values())
    logger.info(
        "tour components enumerated",
        cycles=sum(1 for c in components if c.shape is Shape.CYCLE),
        two_loops=sum(1 for c in components if c.shape is Shape.TWO_LOOPS),
    )
    return components


# -- orders ------------------------------------------------------------


def _formula_order(groupoid: Groupoid, beta_edge: GroupoidEdge, gamma_edge: GroupoidEdge,
                   path_q: Sequence[GroupoidEdge]) -> int:
    """k with <gamma, u.beta> = -cos(pi/k), u the element of q."""
    geometry = groupoid.geometry
    u = groupoid.path_element(path_q)
    moved = u.apply(beta_edge.loop_root)  # type: ignore[arg-type]
    gamma = gamma_edge.loop_root
    k = geometry.pairwise_order(gamma, moved)  # type: ignore[arg-type]
    if k == INFINITY:
        raise InvariantViolation("shuttling tour of infinite order", details={"at": beta_edge.key})
    k = int(k)
    expected = geometry.field.try_embed_cos(k)
    twice = 2 * geometry.inner(gamma, moved)  # type: ignore[arg-type]
    if expected is not None and twice != -expected:
        raise InvariantViolation(
            "tour roots do not form a root basis", details={"at": beta_edge.key, "order": k}
        )
    return k


def make_shuttling_tour(
    groupoid: Groupoid, component: TourComponent, first_loop: Optional[GroupoidEdge] = None
) -> ShuttlingTour:
    if component.shape is not Shape.TWO_LOOPS:
        raise PreconditionError("only two-loop components carry shuttling tours")
    beta_edge = first_loop or component.loops[0]
    walk = component.rotated(beta_edge)
    gamma_edge = next(e for e in component.loops if e != beta_edge)
    j = walk.index(gamma_edge, 1)
    path_q = walk[1:j]
    order = _formula_order(groupoid, beta_edge, gamma_edge, path_q)
    return ShuttlingTour(component, beta_edge, gamma_edge, tuple(path_q), order)


def _count_order(groupoid: Groupoid, tour: ShuttlingTour) -> int:
    """|(Phi_K^{perp [y] & K})^+| with K = J_~(J - [y])."""
    system, geometry = groupoid.system, groupoid.geometry
    y = tour.y
    K = system.tilde(y, tour.component.J - frozenset(y))
    local = [geometry.simple_root(v) for v in y if v in K]
    return sum(
        1 for gamma in geometry.positive_roots(K)
        if all(geometry.inner(gamma, alpha).is_zero for alpha in local)
    )


def _table_order(groupoid: Groupoid, tour: ShuttlingTour) -> Optional[int]:
    system = groupoid.system
    x, y, J = tour.x, tour.y, tour.component.J
    s = tour.beta_edge.s
    (s_other,) = J - frozenset(x) - {s}
    t = tour.gamma_edge.s
    (t_other,) = J - frozenset(y) - {t}
    K = system.tilde(y, {t, t_other})
    if len(system.components(K)) > 1:
        return 2 if groupoid.edge(y, t_other).is_loop else 1
    for labelling in canonical_labellings(system.graph.nx_graph(K)):
        for (a, a2), (b, b2) in (((s, s_other), (t, t_other)), ((t, t_other), (s, s_other))):
            ss = (labelling.position(a), labelling.position(a2))
            tt = (labelling.position(b), labelling.position(b2))
            k = lookup_order(labelling.family, labelling.rank, labelling.m, ss, tt)
            if k is not None:
                return k
    return None


def tour_order(groupoid: Groupoid, tour: ShuttlingTour, method: OrderMethod) -> int:
    if method is OrderMethod.FORMULA:
        return _formula_order(groupoid, tour.beta_edge, tour.gamma_edge, tour.path_q)
    if method is OrderMethod.COUNT:
        return _count_order(groupoid, tour)
    k = _table_order(groupoid, tour)
    if k is None:
        logger.warning("no table row for shuttling tour, using formula", x=tour.x, y=tour.y)
        return _formula_order(groupoid, tour.beta_edge, tour.gamma_edge, tour.path_q)
    return k


def check_tour(groupoid: Groupoid, tour: ShuttlingTour) -> None:
    """All three order methods agree and the closed path has exactly that order."""
    orders = {method.value: tour_order(groupoid, tour, method) for method in OrderMethod}
    if len(set(orders.values())) != 1:
        raise InvariantViolation(
            "shuttling tour order methods disagree", details={"x": tour.x, **orders}
        )
    element = groupoid.path_element(tour.closed_path)
    power = groupoid.geometry.identity()
    for i in range(1, tour.order + 1):
        power = power * element
        if power.is_identity() != (i == tour.order):
            raise InvariantViolation(
                "shuttling tour element has the wrong order",
                details={"x": tour.x, "order": tour.order, "power": i},
            )


def classify_tours(
    cg: CGraph, components: Sequence[TourComponent]
) -> Tuple[List[TwoCell], List[ShuttlingTour]]:
    """Split components into verified 2-cells and verified shuttling tours."""
    groupoid = cg.groupoid
    cells: List[TwoCell] = []
    tours: List[ShuttlingTour] = []
    for component in components:
        if component.shape is Shape.CYCLE:
            if not groupoid.path_element(component.walk).is_identity():
                raise InvariantViolation(
                    "circular tour does not evaluate to the identity",
                    details={"start": component.vertices[0]},
                )
            cells.append(TwoCell(component))
        else:
            first = min(component.loops, key=cg.edge_order)
            tour = make_shuttling_tour(groupoid, component, first)
            check_tour(groupoid, tour)
            tours.append(tour)
    cells.sort(key=lambda c: sorted(cg.index[v] for v in c.component.vertices))
    tours.sort(key=lambda t: (cg.edge_order(t.beta_edge), cg.edge_order(t.gamma_edge)))
    logger.info("tours classified", cells=len(cells), shuttling=len(tours))
    return cells, tours


def gbm_pair(groupoid: Groupoid, x: Vertex, s: int, t: int) -> Tuple[Path, Path]:
    """The two standard expressions of w_0(J) w_0(J - {s,t}), J = [x]_~{s,t}."""
    system = groupoid.system
    if s == t or s in x or t in x:
        raise PreconditionError("s and t must be distinct generators outside [x]")
    J = system.tilde(x, {s, t})
    if not system.is_finite_type(J):
        raise PreconditionError("[x]_~{s,t} is not of finite type", details={"x": x})
    element = system.w0(J) * system.w0(J - {s, t})
    first = groupoid.standard_expression(element, x, prefer_last=s)
    second = groupoid.standard_expression(element, x, prefer_last=t)
    if len(first) != len(second):
        raise InvariantViolation("braid move sides differ in length", details={"x": x})
    loops = (sum(e.is_loop for e in first), sum(e.is_loop for e in second))
    if loops[0] != loops[1]:
        raise InvariantViolation("braid move sides differ in loop number", details={"x": x})
    if first and first[0] == second[0]:
        raise InvariantViolation("braid move sides start with the same generator")
    return first, second
