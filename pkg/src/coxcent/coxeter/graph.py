"""Coxeter graph data model and input-document parsing."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

import networkx as nx
import structlog
from pydantic import ValidationError as PydanticValidationError

from ..api.schemas import GraphDocument
from ..core.exceptions import ParseError, PreconditionError

logger = structlog.get_logger(__name__)

INFINITY = math.inf

Label = Union[int, float]


@dataclass(frozen=True)
class CoxeterGraph:
    """Generators with symmetric bond labels; m = 1 on the diagonal, INFINITY for free pairs."""

    generators: Tuple[str, ...]
    bonds: Tuple[Tuple[Label, ...], ...]
    name: str = "unnamed"

    def __post_init__(self) -> None:
        n = len(self.generators)
        if len(set(self.generators)) != n:
            raise PreconditionError("generator names must be distinct")
        if len(self.bonds) != n or any(len(row) != n for row in self.bonds):
            raise PreconditionError("bond matrix must be square of size |S|")
        for i in range(n):
            for j in range(n):
                m = self.bonds[i][j]
                if m != self.bonds[j][i]:
                    raise PreconditionError(f"bond matrix not symmetric at {i},{j}")
                if (m == 1) != (i == j):
                    raise PreconditionError(f"m = 1 exactly on the diagonal, got {m} at {i},{j}")
                if i != j and m < 2:
                    raise PreconditionError(f"bond label below 2 at {i},{j}")

    @classmethod
    def from_edges(
        cls,
        generators: Sequence[str],
        edges: Iterable[Tuple[str, str, Label]],
        name: str = "unnamed",
    ) -> "CoxeterGraph":
        """Graph with unlisted distinct pairs at m = 2."""
        index = {g: i for i, g in enumerate(generators)}
        n = len(generators)
        bonds = [[1 if i == j else 2 for j in range(n)] for i in range(n)]
        for a, b, m in edges:
            i, j = index[a], index[b]
            bonds[i][j] = bonds[j][i] = m
        return cls(tuple(generators), tuple(tuple(row) for row in bonds), name)

    @property
    def rank(self) -> int:
        return len(self.generators)

    def m(self, i: int, j: int) -> Label:
        return self.bonds[i][j]

    def index(self, name: str) -> int:
        try:
            return self.generators.index(name)
        except ValueError:
            raise PreconditionError(f"unknown generator {name!r}") from None

    def name_of(self, i: int) -> str:
        return self.generators[i]

    def adjacent(self, i: int, j: int) -> bool:
        return i != j and self.bonds[i][j] != 2

    @property
    def finite_labels(self) -> FrozenSet[int]:
        return frozenset(
            int(m) for row in self.bonds for m in row if m != 1 and m != INFINITY
        )

    def nx_graph(self, subset: Optional[Iterable[int]] = None) -> nx.Graph:
        """Coxeter diagram on ``subset``: edges for every non-commuting pair, attribute m."""
        nodes = sorted(range(self.rank) if subset is None else set(subset))
        graph = nx.Graph()
        graph.add_nodes_from(nodes)
        for a, i in enumerate(nodes):
            for j in nodes[a + 1:]:
                if self.adjacent(i, j):
                    graph.add_edge(i, j, m=self.bonds[i][j])
        return graph

    def restrict(self, subset: Iterable[int]) -> Tuple["CoxeterGraph", Dict[int, int]]:
        """Induced graph on ``subset`` and the old-to-new index map."""
        keep = sorted(set(subset))
        remap = {old: new for new, old in enumerate(keep)}
        bonds = tuple(tuple(self.bonds[i][j] for j in keep) for i in keep)
        graph = CoxeterGraph(tuple(self.generators[i] for i in keep), bonds, self.name)
        return graph, remap


@dataclass(frozen=True)
class Problem:
    """A Coxeter graph together with the ordered subset I giving the tuple x_I."""

    graph: CoxeterGraph
    subset: Tuple[int, ...]

    @property
    def x_I(self) -> Tuple[int, ...]:
        return self.subset


def _format_location(loc: Sequence[Union[str, int]]) -> str:
    out = ""
    for part in loc:
        out += f"[{part}]" if isinstance(part, int) else (f".{part}" if out else str(part))
    return out or "<document>"


def parse_document(text: str) -> Problem:
    """Parse a JSON input document into a graph and the ordered subset I."""
    try:
        document = GraphDocument.model_validate_json(text)
    except PydanticValidationError as exc:
        errors = [
            {"location": _format_location(err["loc"]), "message": err["msg"]}
            for err in exc.errors()
        ]
        first = errors[0] if errors else {"location": "<document>", "message": str(exc)}
        raise ParseError(
            f"{first['location']}: {first['message']}", details={"errors": errors}
        ) from None

    edges: List[Tuple[str, str, Label]] = [
        (e.a, e.b, INFINITY if e.m == "inf" else int(e.m)) for e in document.edges
    ]
    graph = CoxeterGraph.from_edges(document.generators, edges, document.name)
    subset = tuple(graph.index(name) for name in document.subset)
    logger.debug("document parsed", name=document.name, rank=graph.rank, subset=len(subset))
    return Problem(graph, subset)


def parse_graph(text: str) -> CoxeterGraph:
    """Parse a JSON input document into its Coxeter graph."""
    return parse_document(text).graph
