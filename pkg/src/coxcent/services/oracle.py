"""Brute-force centralizer and normalizer of W_I for finite W.

W is enumerated as a permutation group on its root system, which it acts on faithfully.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

import structlog
from sympy.combinatorics import Permutation, PermutationGroup

from ..api.schemas import OracleResult
from ..config import RunConfig
from ..core.exceptions import GroupTooLargeError, InvariantViolation
from ..coxeter.geometry import CoxeterGeometry, RootVector
from ..coxeter.graph import Problem
from ..coxeter.system import CoxeterSystem
from .analysis import order_identity, run_pipeline

logger = structlog.get_logger(__name__)

Perm = Tuple[int, ...]


@dataclass
class RootAction:
    roots: List[RootVector]
    index: Dict[RootVector, int]
    generators: List[Perm]

    def compose(self, left: Perm, right: Perm) -> Perm:
        """left after right."""
        return tuple(left[k] for k in right)


def root_action(geometry: CoxeterGeometry, cap: int) -> RootAction:
    """Closure of the simple roots under simple reflections, with the permutation of each s_i."""
    rank = geometry.rank
    roots: List[RootVector] = []
    index: Dict[RootVector, int] = {}
    queue = deque()
    for i in range(rank):
        for alpha in (geometry.simple_root(i), -geometry.simple_root(i)):
            index[alpha] = len(roots)
            roots.append(alpha)
            queue.append(alpha)
    while queue:
        v = queue.popleft()
        for i in range(rank):
            image = geometry.reflect_simple(i, v)
            if image not in index:
                if len(roots) >= cap:
                    raise GroupTooLargeError(
                        "group too large for oracle", details={"cap": cap, "roots": len(roots)}
                    )
                index[image] = len(roots)
                roots.append(image)
                queue.append(image)
    generators = [
        tuple(index[geometry.reflect_simple(i, v)] for v in roots) for i in range(rank)
    ]
    return RootAction(roots, index, generators)


def enumerate_group(action: RootAction, cap: int) -> Dict[Perm, Tuple[int, ...]]:
    """Every element with a shortest word, leftmost letter outermost."""
    identity: Perm = tuple(range(len(action.roots)))
    words: Dict[Perm, Tuple[int, ...]] = {identity: ()}
    queue = deque([identity])
    while queue:
        p = queue.popleft()
        for i, s in enumerate(action.generators):
            q = action.compose(s, p)
            if q in words:
                continue
            if len(words) >= cap:
                raise GroupTooLargeError("group too large for oracle", details={"cap": cap})
            words[q] = (i,) + words[p]
            queue.append(q)
    return words


def _generating_words(
    members: Sequence[Perm], words: Dict[Perm, Tuple[int, ...]]
) -> List[Tuple[int, ...]]:
    chosen: List[Perm] = []
    group: Optional[PermutationGroup] = None
    for p in sorted(members, key=lambda q: (len(words[q]), words[q])):
        if not words[p]:
            continue
        if group is not None and group.contains(Permutation(list(p))):
            continue
        chosen.append(p)
        group = PermutationGroup([Permutation(list(q)) for q in chosen])
    return [words[p] for p in chosen]


def brute_force_centralizer(
    system: CoxeterSystem, subset: Sequence[int], cap: int = 200_000
) -> OracleResult:
    """|W|, |Z_W(W_I)| and |N_W(W_I)| by direct enumeration."""
    geometry = system.geometry
    action = root_action(geometry, cap)
    words = enumerate_group(action, cap)
    order = PermutationGroup([Permutation(list(g)) for g in action.generators]).order()
    if order != len(words):
        raise InvariantViolation(
            "enumeration disagrees with the permutation group order",
            details={"enumerated": len(words), "order": order},
        )

    I = frozenset(subset)
    simple = [
        (action.index[geometry.simple_root(i)], action.index[-geometry.simple_root(i)]) for i in I
    ]
    parabolic = frozenset(k for k, root in enumerate(action.roots) if root.support <= I)

    centralizer: List[Perm] = []
    normalizer = 0
    for p in words:
        if all(p[plus] in (plus, minus) for plus, minus in simple):
            centralizer.append(p)
        if all(p[k] in parabolic for k in parabolic):
            normalizer += 1

    names = system.graph.generators
    result = OracleResult(
        group_order=len(words),
        centralizer_order=len(centralizer),
        normalizer_order=normalizer,
        centralizer_generators=[
            [names[i] for i in word] for word in _generating_words(centralizer, words)
        ],
    )
    if len(words) % normalizer or normalizer % len(centralizer):
        raise InvariantViolation("subgroup orders do not divide", details=result.model_dump())
    logger.info(
        "oracle enumeration finished",
        order=result.group_order,
        centralizer=result.centralizer_order,
        normalizer=result.normalizer_order,
    )
    return result


def run_oracle(problem: Problem, config: RunConfig) -> OracleResult:
    """Brute force, then the pipeline's order identity for comparison when it applies."""
    system = CoxeterSystem(problem.graph, field_max_n=config.field_max_n)
    result = brute_force_centralizer(system, problem.x_I, config.group_order_cap)
    identity = order_identity(run_pipeline(problem, config))
    if identity is not None:
        result.predicted_centralizer_order = identity.centralizer
        result.predicted_normalizer_order = identity.normalizer
    if not result.compared:
        logger.warning("no order identity to compare against", order=result.group_order)
    elif not result.agrees:
        logger.error("oracle disagrees with the decomposition", **result.model_dump())
    return result
