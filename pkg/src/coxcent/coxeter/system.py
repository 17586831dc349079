"""A Coxeter system instance: graph, exact field, geometry and cached catalog lookups."""

from __future__ import annotations

from typing import Dict, FrozenSet, Iterable, List, Optional

import structlog

from ..algebra.field import ExactField, build_field
from .catalog import (
    FiniteTypeLabel,
    classify_finite_type,
    irreducible_components,
    minus_one_type,
    tilde_closure,
    w0_diagram_action,
)
from .geometry import CoxeterGeometry, GroupElement
from .graph import CoxeterGraph

logger = structlog.get_logger(__name__)


class CoxeterSystem:
    """Everything that depends only on (W, S); shared by all downstream layers."""

    def __init__(self, graph: CoxeterGraph, field_max_n: int = 1_000_000) -> None:
        self.graph = graph
        self.field: ExactField = build_field(graph.finite_labels, max_n=field_max_n)
        self.geometry = CoxeterGeometry(graph, self.field)
        self._types: Dict[FrozenSet[int], Optional[List[FiniteTypeLabel]]] = {}
        self._actions: Dict[FrozenSet[int], Dict[int, int]] = {}
        logger.info(
            "coxeter system ready", name=graph.name, rank=graph.rank, N=self.field.N
        )

    @property
    def rank(self) -> int:
        return self.graph.rank

    def finite_type(self, subset: Iterable[int]) -> Optional[List[FiniteTypeLabel]]:
        key = frozenset(subset)
        if key not in self._types:
            self._types[key] = classify_finite_type(key, self.graph)
        return self._types[key]

    def is_finite_type(self, subset: Iterable[int]) -> bool:
        return self.finite_type(subset) is not None

    def diagram_action(self, subset: Iterable[int]) -> Dict[int, int]:
        key = frozenset(subset)
        if key not in self._actions:
            self._actions[key] = w0_diagram_action(key, self.graph)
        return self._actions[key]

    def tilde(self, subset: Iterable[int], others: Iterable[int]) -> FrozenSet[int]:
        return tilde_closure(subset, others, self.graph)

    def components(self, subset: Iterable[int]) -> List[FrozenSet[int]]:
        return irreducible_components(subset, self.graph)

    def is_minus_one_component(self, component: Iterable[int]) -> bool:
        labels = self.finite_type(component)
        return labels is not None and len(labels) == 1 and minus_one_type(labels[0])

    def w0(self, subset: Iterable[int]) -> GroupElement:
        return self.geometry.longest_element(subset)

    def names(self, indices: Iterable[int]) -> List[str]:
        return [self.graph.generators[i] for i in indices]
