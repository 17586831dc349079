"""The reflection subgroup W^perp I: the graph I, a bounded window of generators, finite parts.

A generator class is r(w, xi) = w (xi)_{(x_I)} w^-1 for w in Y_I and a loop xi; it is the
reflection along w . E_y . gamma(xi) where E_y is the tree path from the loop vertex y to x_I.
Classes are identified by their positive root.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Dict, Iterator, List, Optional, Sequence, Tuple

import networkx as nx
import structlog

from ..algebra.words import Word, reduced_words, word_letters
from ..core.exceptions import CoxcentError, InvariantViolation
from ..coxeter.catalog import classify_finite_type
from ..coxeter.geometry import GroupElement, RootVector
from ..coxeter.graph import INFINITY, CoxeterGraph, Label
from ..coxeter.system import CoxeterSystem
from .cgraph import CGraph, EdgeKey, GroupoidEdge, Path, build_cgraph
from .presentations import Pi1Presentation, SpanningTree, build_tree, pi1_presentation
from .tours import ShuttlingTour, TwoCell, classify_tours, enumerate_components

logger = structlog.get_logger(__name__)


# -- the graph I -------------------------------------------------------


@dataclass
class IGraph:
    """Vertices: loop generators. Edges: order-one shuttling tours, from beta to gamma."""

    loops: List[GroupoidEdge]
    tours: List[ShuttlingTour]
    graph: nx.MultiGraph

    def component_rank(self, loop: GroupoidEdge) -> int:
        """rk pi_1(I; s_gamma) = E - V + 1 on the component of ``loop``."""
        nodes = nx.node_connected_component(self.graph, loop.key)
        sub = self.graph.subgraph(nodes)
        return sub.number_of_edges() - sub.number_of_nodes() + 1

    def reduced_paths(self, max_length: int) -> Iterator[List[Tuple[int, bool]]]:
        """Non-backtracking I-paths as (tour index, forward) steps."""
        by_vertex: Dict[EdgeKey, List[Tuple[int, bool]]] = {l.key: [] for l in self.loops}
        for i, tour in enumerate(self.tours):
            by_vertex[tour.beta_edge.key].append((i, True))
            by_vertex[tour.gamma_edge.key].append((i, False))

        def end(step: Tuple[int, bool]) -> EdgeKey:
            tour = self.tours[step[0]]
            return (tour.gamma_edge if step[1] else tour.beta_edge).key

        stack: List[List[Tuple[int, bool]]] = [[s] for l in self.loops for s in by_vertex[l.key]]
        while stack:
            path = stack.pop()
            yield path
            if len(path) < max_length:
                last = path[-1]
                for step in by_vertex[end(last)]:
                    if step[0] != last[0]:
                        stack.append(path + [step])

    def image(self, groupoid_inverse: Callable[[Sequence[GroupoidEdge]], Path],
              path: Sequence[Tuple[int, bool]]) -> Path:
        """iota: concatenate q or q^-1 along the steps."""
        out: Path = []
        for i, forward in path:
            q = self.tours[i].path_q
            out.extend(q if forward else groupoid_inverse(q))
        return out


def build_igraph(cg: CGraph, tours: Sequence[ShuttlingTour]) -> IGraph:
    loops = cg.loops()
    graph = nx.MultiGraph()
    graph.add_nodes_from(loop.key for loop in loops)
    edges = [t for t in tours if t.order == 1]
    for i, tour in enumerate(edges):
        if not tour.path_q:
            raise InvariantViolation("order-one tour with an empty connecting path")
        graph.add_edge(tour.beta_edge.key, tour.gamma_edge.key, key=i)
    logger.info("loop graph built", vertices=len(loops), edges=len(edges))
    return IGraph(loops, edges, graph)


def check_iota(cg: CGraph, igraph: IGraph, max_length: int) -> int:
    """Reduced I-paths map to nonempty reduced paths of Y^1; returns the number checked."""
    groupoid = cg.groupoid
    checked = 0
    for path in igraph.reduced_paths(max_length):
        image = igraph.image(groupoid.invert_path, path)
        if not image or groupoid.reduce_path(image) != image:
            raise InvariantViolation("iota does not preserve reducedness", details={"path": path})
        checked += 1
    return checked


# -- generator window ----------------------------------------------------


def loop_frame(tree: SpanningTree) -> Dict[EdgeKey, RootVector]:
    """E_y . gamma(xi) for every loop xi at y: the root of (xi)_{(x_I)}."""
    cg = tree.cg
    groupoid = cg.groupoid
    frame: Dict[EdgeKey, RootVector] = {}
    for loop in cg.loops():
        carry = groupoid.path_element(tree.path(cg.base, loop.source))
        frame[loop.key] = carry.apply(loop.loop_root).positive()  # type: ignore[arg-type]
    return frame


@dataclass(frozen=True)
class WPerpGenerator:
    index: int
    word: Word
    loop: GroupoidEdge
    root: RootVector
    element: GroupElement


@dataclass
class WPerpWindow:
    bound: int
    y_elements: List[Tuple[Word, GroupElement]]
    generators: List[WPerpGenerator]
    orders: Dict[Tuple[int, int], Label]
    members: Dict[Tuple[Word, EdgeKey], int]
    frame: Dict[EdgeKey, RootVector]
    merges_checked: int = 0

    def __post_init__(self) -> None:
        self._by_root = {g.root: g.index for g in self.generators}

    def class_of_root(self, root: RootVector) -> Optional[int]:
        return self._by_root.get(root.positive())

    def order(self, i: int, j: int) -> Label:
        if i == j:
            return 1
        return self.orders[(min(i, j), max(i, j))]


def _y_window(pi1: Pi1Presentation, bound: int) -> List[Tuple[Word, GroupElement]]:
    seen: Dict[GroupElement, Word] = {}
    for word in reduced_words(pi1.group, bound):
        element = pi1.word_element(word)
        seen.setdefault(element, word)
    return [(word, element) for element, word in seen.items()]


def expand_wperp(
    cg: CGraph,
    tree: SpanningTree,
    pi1: Pi1Presentation,
    tours: Sequence[ShuttlingTour],
    bound: int,
    torsion_cap: int = 12,
) -> WPerpWindow:
    """Classes r(w, xi) for w of word length <= bound, with pairwise orders and checks."""
    geometry = cg.groupoid.geometry
    frame = loop_frame(tree)
    loops = cg.loops()
    y_elements = _y_window(pi1, bound)

    generators: List[WPerpGenerator] = []
    by_root: Dict[RootVector, int] = {}
    members: Dict[Tuple[Word, EdgeKey], int] = {}
    for word, element in y_elements:
        for loop in loops:
            root = element.apply(frame[loop.key]).positive()
            if root not in by_root:
                by_root[root] = len(generators)
                generators.append(
                    WPerpGenerator(len(generators), word, loop, root, geometry.reflection(root))
                )
            members[(word, loop.key)] = by_root[root]

    orders: Dict[Tuple[int, int], Label] = {}
    for i, g in enumerate(generators):
        for h in generators[i + 1:]:
            orders[(g.index, h.index)] = geometry.pairwise_order(g.root, h.root)

    window = WPerpWindow(bound, y_elements, generators, orders, members, frame)
    window.merges_checked = _check_tour_relations(cg, tree, tours, window)
    _check_torsion(y_elements, torsion_cap)
    logger.info(
        "w-perp window expanded",
        bound=bound,
        y_elements=len(y_elements),
        classes=len(generators),
        merges_checked=window.merges_checked,
    )
    return window


def _check_tour_relations(
    cg: CGraph, tree: SpanningTree, tours: Sequence[ShuttlingTour], window: WPerpWindow
) -> int:
    """(w, gamma) ~k (w q_{(x_I)}, beta): the two roots generate a dihedral group of order 2k."""
    groupoid, geometry = cg.groupoid, cg.groupoid.geometry
    checked = 0
    for tour in tours:
        q_element = groupoid.path_element(tree.extend(tour.path_q))
        for _, element in window.y_elements:
            left = element.apply(window.frame[tour.gamma_edge.key]).positive()
            right = (element * q_element).apply(window.frame[tour.beta_edge.key]).positive()
            order = geometry.pairwise_order(left, right)
            if order != tour.order:
                raise InvariantViolation(
                    "tour relation disagrees with the matrix order",
                    details={"tour": tour.x, "expected": tour.order, "found": str(order)},
                )
            checked += 1
    return checked


def _check_torsion(y_elements: Sequence[Tuple[Word, GroupElement]], cap: int) -> None:
    for word, element in y_elements:
        if element.is_identity():
            continue
        power = element
        for k in range(1, cap + 1):
            if power.is_identity():
                raise InvariantViolation(
                    "Y_I element of finite order",
                    details={"word": list(word_letters(word)), "order": k},
                )
            power = power * element


# -- finite part ---------------------------------------------------------


class Verdict(str, Enum):
    FINITE = "finite"
    INFINITE = "infinite"
    UNKNOWN = "unknown"


@dataclass
class ComponentVerdict:
    members: List[int]
    verdict: Verdict
    type_name: Optional[str] = None
    witness: Optional[str] = None
    criteria: List[str] = field(default_factory=list)


@dataclass
class FinitePartReport:
    components: List[ComponentVerdict]
    rank_data: Dict[EdgeKey, Tuple[int, int, int]]
    y_fixes_checked: bool

    def verdict_of(self, index: int) -> Optional[ComponentVerdict]:
        for component in self.components:
            if index in component.members:
                return component
        return None

    @property
    def finite_members(self) -> List[int]:
        return sorted(
            i for c in self.components if c.verdict is Verdict.FINITE for i in c.members
        )


def rank_inequality(
    igraph: IGraph, pi1: Pi1Presentation, loop: GroupoidEdge
) -> Tuple[bool, Tuple[int, int, int]]:
    """rk(P) + n < rk(pi_1(Y^1)) for P = pi_1(I; loop)."""
    data = (igraph.component_rank(loop), pi1.cell_count, pi1.y1_rank)
    return data[0] + data[1] < data[2], data


def _subsystem_witness(
    system: CoxeterSystem, loop: GroupoidEdge, vertex_budget: int
) -> Optional[str]:
    """Depth-one subsystem criterion: the rank inequality inside W_J for J = S - {u}."""
    x, s = loop.source, loop.s
    K = system.tilde(x, {s})
    graph = system.graph
    for u in range(system.rank):
        if u in K:
            continue
        J = [v for v in range(system.rank) if v != u]
        if u in x and any(graph.adjacent(u, v) for v in J):
            continue
        if system.is_finite_type(J):
            continue
        sub_graph, remap = graph.restrict(J)
        try:
            sub = CoxeterSystem(sub_graph)
            base = tuple(remap[v] for v in x if v in remap)
            sub_cg = build_cgraph(sub, base, vertex_budget)
            cells, tours = classify_tours(sub_cg, enumerate_components(sub_cg))
            tree = build_tree(sub_cg)
            sub_pi1 = pi1_presentation(sub_cg, tree, cells)
            sub_loop = sub_cg.edge(base, remap[s])
            fired, data = rank_inequality(build_igraph(sub_cg, tours), sub_pi1, sub_loop)
        except CoxcentError as exc:
            logger.debug("subsystem criterion skipped", removed=graph.generators[u], reason=exc.message)
            continue
        if fired:
            return f"rank inequality {data[0]} + {data[1]} < {data[2]} in W_J, J = S - {{{graph.generators[u]}}}"
    return None


def _window_graph(window: WPerpWindow) -> nx.Graph:
    graph = nx.Graph()
    graph.add_nodes_from(g.index for g in window.generators)
    for (i, j), m in window.orders.items():
        if m != 2:
            graph.add_edge(i, j, m=m)
    return graph


def window_coxeter_graph(window: WPerpWindow, members: Optional[Sequence[int]] = None) -> CoxeterGraph:
    """Coxeter graph on window classes r<i> with the computed pairwise orders."""
    if members is None:
        members = [g.index for g in window.generators]
    names = [f"r{i}" for i in members]
    edges = [
        (f"r{i}", f"r{j}", window.order(i, j))
        for a, i in enumerate(members) for j in members[a + 1:]
        if window.order(i, j) != 2
    ]
    return CoxeterGraph.from_edges(names, edges, "w-perp window")


def _component_type(window: WPerpWindow, members: Sequence[int]) -> Optional[str]:
    graph = window_coxeter_graph(window, members)
    labels = classify_finite_type(range(len(members)), graph)
    if not labels or len(labels) != 1:
        return None
    return labels[0].name


def finite_part(
    cg: CGraph,
    pi1: Pi1Presentation,
    igraph: IGraph,
    cells: Sequence[TwoCell],
    window: WPerpWindow,
    widen: Callable[[int], WPerpWindow],
    vertex_budget: int = 1_000_000,
) -> FinitePartReport:
    """Finite/infinite/unknown verdict per component of the window's Coxeter graph."""
    system = cg.system
    rank_data: Dict[EdgeKey, Tuple[int, int, int]] = {}
    loop_witness: Dict[EdgeKey, Tuple[str, str]] = {}
    for loop in cg.loops():
        fired, data = rank_inequality(igraph, pi1, loop)
        rank_data[loop.key] = data
        if fired:
            loop_witness[loop.key] = ("rank-inequality", f"{data[0]} + {data[1]} < {data[2]}")
    for loop in cg.loops():
        if loop.key in loop_witness:
            continue
        witness = _subsystem_witness(system, loop, vertex_budget)
        if witness is not None:
            loop_witness[loop.key] = ("subsystem", witness)

    graph = _window_graph(window)
    wider: Optional[WPerpWindow] = None
    verdicts: List[ComponentVerdict] = []
    for nodes in sorted(nx.connected_components(graph), key=min):
        members = sorted(nodes)
        component = ComponentVerdict(members, Verdict.UNKNOWN)
        infinite_edge = next(
            ((i, j) for i, j, d in graph.subgraph(members).edges(data=True) if d["m"] == INFINITY),
            None,
        )
        if infinite_edge is not None:
            component.verdict = Verdict.INFINITE
            component.witness = f"m(r{infinite_edge[0]}, r{infinite_edge[1]}) = inf"
            component.criteria.append("infinite-edge")
        for i in members:
            fired = loop_witness.get(window.generators[i].loop.key)
            if fired is not None:
                component.verdict = Verdict.INFINITE
                if fired[0] not in component.criteria:
                    component.criteria.append(fired[0])
                component.witness = component.witness or fired[1]
        if component.verdict is Verdict.UNKNOWN:
            if wider is None:
                wider = widen(window.bound + 1)
            if _is_stable(window, wider, members):
                type_name = _component_type(window, members)
                if type_name is not None:
                    component.verdict = Verdict.FINITE
                    component.type_name = type_name
                    component.criteria.append("catalog")
            if component.verdict is Verdict.UNKNOWN:
                component.witness = f"bound {window.bound}"
        verdicts.append(component)

    report = FinitePartReport(verdicts, rank_data, y_fixes_checked=False)
    report.y_fixes_checked = _check_y_fixes_finite_part(cg, pi1, window, report)
    logger.info(
        "finite part analysed",
        finite=sum(c.verdict is Verdict.FINITE for c in verdicts),
        infinite=sum(c.verdict is Verdict.INFINITE for c in verdicts),
        unknown=sum(c.verdict is Verdict.UNKNOWN for c in verdicts),
    )
    return report


def _is_stable(window: WPerpWindow, wider: WPerpWindow, members: Sequence[int]) -> bool:
    """The component keeps its roots and gains no non-commuting neighbour at bound + 1."""
    roots = {window.generators[i].root for i in members}
    indices = [wider.class_of_root(r) for r in roots]
    if any(i is None for i in indices):
        return False
    graph = _window_graph(wider)
    component = nx.node_connected_component(graph, indices[0])
    return {wider.generators[i].root for i in component} == roots


def _check_y_fixes_finite_part(
    cg: CGraph, pi1: Pi1Presentation, window: WPerpWindow, report: FinitePartReport
) -> bool:
    system = cg.system
    for component in system.components(cg.base):
        labels = system.finite_type(component)
        if labels and labels[0].family == "A" and labels[0].rank >= 2:
            logger.info("skipping Y_I fixes finite part check", component=system.names(sorted(component)))
            return False
    for i in report.finite_members:
        root = window.generators[i].root
        for generator in pi1.generators:
            if generator.element.apply(root) != root:
                raise InvariantViolation(
                    "Y_I moves a root of the finite part",
                    details={"class": i, "generator": generator.name},
                )
    return True


# -- symbolic description ----------------------------------------------


@dataclass
class SymbolicWPerp:
    """W^perp I when Y_I = <a> acts by index translation on families r_{f,k}."""

    families: List[str]
    representatives: List[GroupoidEdge]
    assignment: Dict[EdgeKey, Tuple[int, int]]
    pattern: Dict[Tuple[int, int, int], Label]
    span: int

    def describe(self) -> List[str]:
        lines = []
        for (f, g, d), m in sorted(self.pattern.items()):
            shift = f"k{d:+d}" if d else "k"
            lines.append(f"m({self.families[f]},k, {self.families[g]},{shift}) = {m}")
        return lines


def symbolic_wperp(
    cg: CGraph, pi1: Pi1Presentation, window: WPerpWindow
) -> Optional[SymbolicWPerp]:
    if pi1.rank_if_free != 1:
        return None
    geometry = cg.groupoid.geometry
    a = pi1.generators[0].element
    span = 2 * max(window.bound, 1)
    powers = {k: geometry.power(a, k) if k >= 0 else geometry.power(pi1.generators[0].inverse, -k)
              for k in range(-2 * span, 2 * span + 1)}

    def root(k: int, loop: GroupoidEdge) -> RootVector:
        return powers[k].apply(window.frame[loop.key]).positive()

    representatives: List[GroupoidEdge] = []
    assignment: Dict[EdgeKey, Tuple[int, int]] = {}
    for loop in cg.loops():
        target = root(0, loop)
        placed = False
        for f, rep in enumerate(representatives):
            for d in range(-span, span + 1):
                if root(d, rep) == target:
                    assignment[loop.key] = (f, d)
                    placed = True
                    break
            if placed:
                break
        if not placed:
            assignment[loop.key] = (len(representatives), 0)
            representatives.append(loop)

    for f, rep in enumerate(representatives):
        seen = {root(k, rep) for k in range(-span, span + 1)}
        if len(seen) != 2 * span + 1:
            return None
    for f, rep in enumerate(representatives):
        for g, other in enumerate(representatives[f + 1:], start=f + 1):
            if {root(k, rep) for k in range(-span, span + 1)} & {
                root(k, other) for k in range(-span, span + 1)
            }:
                return None

    pattern: Dict[Tuple[int, int, int], Label] = {}
    for f, rep in enumerate(representatives):
        for g in range(f, len(representatives)):
            other = representatives[g]
            for d in range(-span, span + 1):
                if f == g and d <= 0:
                    continue
                m = geometry.pairwise_order(root(0, rep), root(d, other))
                for k in (-1, 1):
                    if geometry.pairwise_order(root(k, rep), root(k + d, other)) != m:
                        return None
                if m != INFINITY:
                    pattern[(f, g, d)] = m
    families = []
    for rep in representatives:
        name = f"r_{cg.index[rep.source] + 1}"
        if sum(other.source == rep.source for other in representatives) > 1:
            name += f"[{cg.system.graph.generators[rep.s]}]"
        families.append(name)
    return SymbolicWPerp(families, representatives, assignment, pattern, span)
