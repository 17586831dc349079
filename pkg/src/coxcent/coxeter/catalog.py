"""Finite-type catalog: classification, canonical labelling, (-1)-type, diagram actions."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, Iterator, List, Optional, Tuple

import networkx as nx
from networkx.algorithms.isomorphism import GraphMatcher

from ..core.exceptions import NotFiniteTypeError, PreconditionError
from .graph import CoxeterGraph

FAMILIES = ("A", "B", "D", "E", "F", "H", "I2")


@dataclass(frozen=True)
class FiniteTypeLabel:
    """Catalog type of one irreducible component; canonical_order[k] is r_{k+1}."""

    family: str
    rank: int
    canonical_order: Tuple[int, ...]
    m: Optional[int] = None

    @property
    def name(self) -> str:
        if self.family == "I2":
            return f"I2({self.m})"
        return f"{self.family}{self.rank}"

    def position(self, generator: int) -> int:
        """1-based catalog position of ``generator``."""
        return self.canonical_order.index(generator) + 1

    def generator(self, position: int) -> int:
        return self.canonical_order[position - 1]


def catalog_edges(family: str, rank: int, m: Optional[int] = None) -> Dict[Tuple[int, int], int]:
    """Bonds other than 2 of a catalog type, on 1-based positions."""
    n = rank
    edges: Dict[Tuple[int, int], int] = {}
    if family == "A":
        edges = {(i, i + 1): 3 for i in range(1, n)}
    elif family == "B":
        edges = {(i, i + 1): 3 for i in range(1, n - 1)}
        edges[(n - 1, n)] = 4
    elif family == "D":
        edges = {(i, i + 1): 3 for i in range(1, n - 1)}
        edges[(n - 2, n)] = 3
    elif family == "E":
        edges = {(1, 3): 3, (2, 4): 3}
        edges.update({(i, i + 1): 3 for i in range(3, n)})
    elif family == "F":
        edges = {(1, 2): 3, (2, 3): 4, (3, 4): 3}
    elif family == "H":
        edges = {(1, 2): 5}
        edges.update({(i, i + 1): 3 for i in range(2, n)})
    elif family == "I2":
        if m is None:
            raise PreconditionError("I2 needs its bond label")
        edges = {(1, 2): m}
    else:
        raise PreconditionError(f"unknown family {family!r}")
    return edges


def admissible(family: str, rank: int, m: Optional[int] = None) -> bool:
    if family == "A":
        return rank >= 1
    if family == "B":
        return rank >= 2
    if family == "D":
        return rank >= 4
    if family == "E":
        return rank in (6, 7, 8)
    if family == "F":
        return rank == 4
    if family == "H":
        return rank in (3, 4)
    if family == "I2":
        return rank == 2 and m is not None and m >= 5 and m != math.inf
    return False


def _pattern(family: str, rank: int, m: Optional[int]) -> nx.Graph:
    pattern = nx.Graph()
    pattern.add_nodes_from(range(1, rank + 1))
    for (i, j), label in catalog_edges(family, rank, m).items():
        pattern.add_edge(i, j, m=label)
    return pattern


def _candidates(component: nx.Graph) -> Iterator[Tuple[str, int, Optional[int]]]:
    rank = component.number_of_nodes()
    labels = sorted({d["m"] for _, _, d in component.edges(data=True)})
    if any(m == math.inf for m in labels):
        return
    if rank == 1:
        yield "A", 1, None
        return
    if rank == 2:
        (label,) = labels or [2]
        if label == 3:
            yield "A", 2, None
        elif label == 4:
            yield "B", 2, None
        elif label >= 5:
            yield "I2", 2, int(label)
        return
    for family in ("A", "B", "D", "E", "F", "H"):
        if admissible(family, rank):
            yield family, rank, None


def _matchers(component: nx.Graph) -> Iterator[Tuple[str, int, Optional[int], GraphMatcher]]:
    for family, rank, m in _candidates(component):
        matcher = GraphMatcher(
            component, _pattern(family, rank, m), edge_match=lambda e1, e2: e1["m"] == e2["m"]
        )
        if matcher.is_isomorphic():
            yield family, rank, m, matcher


def classify_component(component: nx.Graph) -> Optional[FiniteTypeLabel]:
    """Catalog label of a connected Coxeter diagram, or None if it is not of finite type."""
    for family, rank, m, matcher in _matchers(component):
        inverse = {position: node for node, position in matcher.mapping.items()}
        return FiniteTypeLabel(family, rank, tuple(inverse[k] for k in range(1, rank + 1)), m)
    return None


def canonical_labellings(component: nx.Graph) -> List[FiniteTypeLabel]:
    """Every canonical labelling of a finite-type component (one per diagram symmetry)."""
    labellings: List[FiniteTypeLabel] = []
    for family, rank, m, matcher in _matchers(component):
        for mapping in matcher.isomorphisms_iter():
            inverse = {position: node for node, position in mapping.items()}
            labellings.append(
                FiniteTypeLabel(family, rank, tuple(inverse[k] for k in range(1, rank + 1)), m)
            )
        break
    return labellings


def irreducible_components(subset: Iterable[int], graph: CoxeterGraph) -> List[FrozenSet[int]]:
    """Connected components of the diagram on ``subset``, ordered by least element."""
    components = [frozenset(c) for c in nx.connected_components(graph.nx_graph(subset))]
    return sorted(components, key=min)


def classify_finite_type(
    subset: Iterable[int], graph: CoxeterGraph
) -> Optional[List[FiniteTypeLabel]]:
    """Per-component catalog labels, or None when some component is not of finite type."""
    diagram = graph.nx_graph(subset)
    labels: List[FiniteTypeLabel] = []
    for component in irreducible_components(diagram.nodes, graph):
        label = classify_component(diagram.subgraph(component))
        if label is None:
            return None
        labels.append(label)
    return labels


def minus_one_type(label: FiniteTypeLabel) -> bool:
    """True iff the longest element of this irreducible type is central."""
    if label.family == "A":
        return label.rank == 1
    if label.family == "D":
        return label.rank % 2 == 0
    if label.family == "E":
        return label.rank != 6
    if label.family == "I2":
        return label.m is not None and label.m % 2 == 0
    return True


def diagram_involution(label: FiniteTypeLabel) -> Dict[int, int]:
    """Position map sigma with w_0 . alpha_{r_i} = -alpha_{r_sigma(i)}."""
    n = label.rank
    identity = {i: i for i in range(1, n + 1)}
    if minus_one_type(label):
        return identity
    if label.family == "A":
        return {i: n + 1 - i for i in range(1, n + 1)}
    if label.family == "D":
        return {**identity, n - 1: n, n: n - 1}
    if label.family == "E":
        return {**identity, 1: 6, 6: 1, 3: 5, 5: 3}
    # I2 with odd m
    return {1: 2, 2: 1}


def w0_diagram_action(subset: Iterable[int], graph: CoxeterGraph) -> Dict[int, int]:
    """Generator map sigma with w_0(J) . alpha_t = -alpha_{sigma(t)}."""
    subset = frozenset(subset)
    labels = classify_finite_type(subset, graph)
    if labels is None:
        raise NotFiniteTypeError(
            "longest element requested for a subset not of finite type",
            details={"subset": sorted(subset)},
        )
    action: Dict[int, int] = {}
    for label in labels:
        involution = diagram_involution(label)
        for position, generator in enumerate(label.canonical_order, start=1):
            action[generator] = label.generator(involution[position])
    return action


def tilde_closure(subset: Iterable[int], others: Iterable[int], graph: CoxeterGraph) -> FrozenSet[int]:
    """Union of the components of the diagram on subset + others that meet ``others``."""
    others = frozenset(others)
    diagram = graph.nx_graph(frozenset(subset) | others)
    closure: set = set()
    for component in nx.connected_components(diagram):
        if component & others:
            closure |= component
    return frozenset(closure)


def coxeter_group_order(labels: Iterable[FiniteTypeLabel]) -> int:
    """Order of the finite Coxeter group with the given irreducible components."""
    order = 1
    for label in labels:
        n = label.rank
        if label.family == "A":
            order *= math.factorial(n + 1)
        elif label.family == "B":
            order *= 2 ** n * math.factorial(n)
        elif label.family == "D":
            order *= 2 ** (n - 1) * math.factorial(n)
        elif label.family == "E":
            order *= {6: 51840, 7: 2903040, 8: 696729600}[n]
        elif label.family == "F":
            order *= 1152
        elif label.family == "H":
            order *= {3: 120, 4: 14400}[n]
        else:
            order *= 2 * int(label.m or 0)
    return order


def catalog_graph(family: str, rank: int, m: Optional[int] = None) -> CoxeterGraph:
    """Standalone graph of a catalog type on generators r1..rn in canonical labelling."""
    if not admissible(family, rank, m) and not (family == "I2" and m in (3, 4) and rank == 2):
        raise PreconditionError(f"no catalog type {family}{rank}", details={"m": m})
    names = [f"r{i}" for i in range(1, rank + 1)]
    edges = [(f"r{i}", f"r{j}", label) for (i, j), label in catalog_edges(family, rank, m).items()]
    name = f"I2({m})" if family == "I2" else f"{family}{rank}"
    return CoxeterGraph.from_edges(names, edges, name)
