"""The analysis pipeline: graph C, complex Y, W^perp I and the symmetry layers, as a report."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence

import structlog

from ..api.schemas import (
    AnalysisReport,
    CentralizerSection,
    CGraphSection,
    ComponentRecord,
    DihedralRecord,
    GroupoidEdgeRecord,
    HalfTurnRecord,
    NormalizerSection,
    OrderIdentityRecord,
    Pi1Section,
    PresentationRecord,
    RefinedRecord,
    RelationRecord,
    TourRecord,
    VertexRecord,
    WPerpClassRecord,
    WPerpSection,
)
from ..config import RunConfig
from ..core.exceptions import InvariantViolation
from ..coxeter.catalog import classify_finite_type, coxeter_group_order
from ..coxeter.graph import INFINITY, Problem
from ..coxeter.system import CoxeterSystem
from ..groupoid.cgraph import CGraph, build_cgraph, format_edge_key, parse_edge_key
from ..groupoid.presentations import (
    DihedralWitness,
    GroupPresentation,
    Pi1Presentation,
    SpanningTree,
    build_tree,
    pi1_presentation,
)
from ..groupoid.symmetry import (
    AGroups,
    BPresentation,
    CocycleRelation,
    NormalizerAssembly,
    RefinedDecomposition,
    action_table,
    b_presentation,
    compute_A_groups,
    normalizer_assembly,
    positive_system_check,
    refined_decomposition,
)
from ..groupoid.tours import ShuttlingTour, TwoCell, classify_tours, enumerate_components
from ..groupoid.wperp import (
    FinitePartReport,
    IGraph,
    SymbolicWPerp,
    Verdict,
    WPerpWindow,
    build_igraph,
    check_iota,
    expand_wperp,
    finite_part,
    symbolic_wperp,
    window_coxeter_graph,
)

logger = structlog.get_logger(__name__)


@dataclass
class PipelineResult:
    problem: Problem
    config: RunConfig
    system: CoxeterSystem
    cg: CGraph
    cells: List[TwoCell]
    tours: List[ShuttlingTour]
    tree: SpanningTree
    pi1: Pi1Presentation
    igraph: IGraph
    window: WPerpWindow
    finite: FinitePartReport
    symbolic: Optional[SymbolicWPerp]
    groups: AGroups
    b: BPresentation
    normalizer: NormalizerAssembly
    refined: Optional[RefinedDecomposition]


def run_pipeline(problem: Problem, config: RunConfig) -> PipelineResult:
    """Every stage in order; each stage verifies its own identities."""
    graph = problem.graph
    system = CoxeterSystem(graph, field_max_n=config.field_max_n)
    cg = build_cgraph(system, problem.x_I, config.vertex_budget)
    cells, tours = classify_tours(cg, enumerate_components(cg))

    prefer = [parse_edge_key(text, graph) for text in config.tree_preference]
    avoid = [parse_edge_key(text, graph) for text in config.tree_avoid]
    tree = build_tree(cg, prefer, avoid)
    pi1 = pi1_presentation(cg, tree, cells)

    igraph = build_igraph(cg, tours)
    check_iota(cg, igraph, config.igraph_path_length)

    def widen(bound: int) -> WPerpWindow:
        return expand_wperp(cg, tree, pi1, tours, bound, config.torsion_check_cap)

    window = widen(config.bound_L)
    finite = finite_part(cg, pi1, igraph, cells, window, widen, config.vertex_budget)
    symbolic = symbolic_wperp(cg, pi1, window)

    groups = compute_A_groups(cg, tree)
    b = b_presentation(cg, pi1, groups, config.dihedral_power_cap)
    normalizer = normalizer_assembly(cg, pi1, config.dihedral_power_cap)
    if not positive_system_check(window, list(groups.tilde) + list(normalizer.symmetries)):
        raise InvariantViolation("a symmetry moves a positive root of W^perp I to a negative one")
    refined = refined_decomposition(cg, groups, finite)

    logger.info(
        "analysis finished",
        name=graph.name,
        vertices=len(cg),
        pi1_generators=len(pi1.generators),
        wperp_classes=len(window.generators),
    )
    return PipelineResult(
        problem, config, system, cg, cells, tours, tree, pi1, igraph, window, finite,
        symbolic, groups, b, normalizer, refined,
    )


# -- report assembly ---------------------------------------------------------


def _presentation_record(
    presentation: GroupPresentation,
    dihedral: Optional[DihedralWitness] = None,
    free_rank: Optional[int] = None,
) -> PresentationRecord:
    return PresentationRecord(
        generators=list(presentation.names),
        relations=[
            RelationRecord(kind=r.kind, lhs=presentation.spell(r.lhs), rhs=presentation.spell(r.rhs))
            for r in presentation.relations
        ],
        free_rank=free_rank,
        dihedral=None if dihedral is None else DihedralRecord(
            a_prime=presentation.spell(dihedral.a_prime),
            b_prime=presentation.spell(dihedral.b_prime),
        ),
    )


def _cocycle_records(pi1: Pi1Presentation, cocycles: Sequence[CocycleRelation]) -> List[RelationRecord]:
    return [
        RelationRecord(
            kind="cocycle",
            lhs=f"{c.left} {c.right}",
            rhs=f"{pi1.spell(c.correction)} {c.product}",
        )
        for c in cocycles if not c.correction.is_identity
    ]


def _cgraph_section(result: PipelineResult) -> CGraphSection:
    cg = result.cg
    names = cg.system.graph.generators
    key = lambda e: format_edge_key(e.key, cg.system.graph)  # noqa: E731
    loops_at: Dict[tuple, List[str]] = {}
    for loop in cg.loops():
        loops_at.setdefault(loop.source, []).append(names[loop.s])
    tours = [
        TourRecord(
            kind="circular",
            J=[names[j] for j in sorted(c.component.J)],
            vertices=sorted(cg.index[v] + 1 for v in c.component.vertices),
            order=1,
        )
        for c in result.cells
    ] + [
        TourRecord(
            kind="shuttling",
            J=[names[j] for j in sorted(t.component.J)],
            vertices=sorted(cg.index[v] + 1 for v in t.component.vertices),
            order=t.order,
            loops=[key(t.beta_edge), key(t.gamma_edge)],
        )
        for t in result.tours
    ]
    return CGraphSection(
        vertices=[
            VertexRecord(index=i + 1, entries=[names[u] for u in v], loops=loops_at.get(v, []))
            for i, v in enumerate(cg.vertices)
        ],
        loop_count=len(cg.loops()),
        edges=[
            GroupoidEdgeRecord(
                source=cg.index[e.source] + 1, generator=names[e.s],
                target=cg.index[e.target] + 1, key=key(e),
            )
            for e in cg.y1_edges()
        ],
        cells=[sorted(cg.index[v] + 1 for v in c.component.vertices) for c in result.cells],
        tours=tours,
    )


def _pi1_section(result: PipelineResult) -> Pi1Section:
    pi1, tree, graph = result.pi1, result.tree, result.system.graph
    return Pi1Section(
        presentation=_presentation_record(pi1.as_group_presentation(), free_rank=pi1.rank_if_free),
        generator_edges={
            g.name: format_edge_key(result.cg.representative(g.edge).key, graph)
            for g in pi1.generators
        },
        tree_edges=sorted(
            format_edge_key(result.cg.representative(e).key, graph) for e in tree.parent.values()
        ),
        y1_rank=pi1.y1_rank,
        cell_count=pi1.cell_count,
    )


def _wperp_section(result: PipelineResult) -> WPerpSection:
    window, pi1 = result.window, result.pi1
    graph = result.system.graph
    return WPerpSection(
        bound=window.bound,
        classes=[
            WPerpClassRecord(
                index=g.index,
                word=pi1.spell(g.word),
                loop=format_edge_key(g.loop.key, graph),
                root=g.root.coeff_map(graph.generators),
            )
            for g in window.generators
        ],
        finite_orders=[[i, j, int(m)] for (i, j), m in sorted(window.orders.items()) if m != INFINITY],
        components=[
            ComponentRecord(
                members=c.members,
                verdict=c.verdict.value,
                type_name=c.type_name,
                witness=c.witness,
                criteria=c.criteria,
            )
            for c in result.finite.components
        ],
        rank_data={
            format_edge_key(k, graph): list(v) for k, v in sorted(result.finite.rank_data.items())
        },
        y_fixes_checked=result.finite.y_fixes_checked,
        symbolic=None if result.symbolic is None else result.symbolic.describe(),
    )


def _centralizer_section(result: PipelineResult) -> CentralizerSection:
    cg, pi1, groups, b = result.cg, result.pi1, result.groups, result.b
    minus_one = frozenset().union(*groups.minus_one_components)
    actors = [(g.name, pi1.word(g.index)) for g in pi1.generators]
    actors += [(h.name, h) for h in b.basis]
    refined = result.refined
    return CentralizerSection(
        center=[h.name for h in groups.center],
        a_tilde=[
            HalfTurnRecord(
                A=sorted(i + 1 for i in h.A),
                name=h.name,
                target=cg.vertex_label(h.target),
                minus_one=bool(h.A) and h.A <= minus_one,
            )
            for h in groups.tilde
        ],
        a_basis=[h.name for h in b.basis],
        b_presentation=_presentation_record(b.presentation, b.dihedral),
        tree_stable=b.tree_stable,
        splits=b.splits,
        nontrivial_cocycles=_cocycle_records(pi1, b.cocycles),
        actions=action_table(cg, pi1, result.window, actors),
        refined=None if refined is None else RefinedRecord(
            finite_classes=refined.finite_classes,
            finite_types=refined.finite_types,
            other_classes=refined.other_classes,
        ),
    )


def _normalizer_section(result: PipelineResult) -> NormalizerSection:
    cg, pi1, normalizer = result.cg, result.pi1, result.normalizer
    return NormalizerSection(
        symmetries=[s.name for s in normalizer.symmetries],
        generators=[s.name for s in normalizer.generators],
        y_tilde_presentation=_presentation_record(normalizer.presentation, normalizer.dihedral),
        tree_stable=normalizer.tree_stable,
        splits=normalizer.splits,
        nontrivial_cocycles=_cocycle_records(pi1, normalizer.cocycles),
        actions=action_table(cg, pi1, result.window, [(s.name, s) for s in normalizer.generators]),
    )


def order_identity(result: PipelineResult) -> Optional[OrderIdentityRecord]:
    """|Z_W(W_I)| and |N_W(W_I)| from the factors, for finite W."""
    system = result.system
    if not system.is_finite_type(range(system.rank)) or result.pi1.generators:
        return None
    if any(c.verdict is not Verdict.FINITE for c in result.finite.components):
        return None
    wperp = 1
    if result.window.generators:
        labels = classify_finite_type(
            range(len(result.window.generators)), window_coxeter_graph(result.window)
        )
        if labels is None:
            return None
        wperp = coxeter_group_order(labels)
    w_I = coxeter_group_order(system.finite_type(result.cg.base) or [])
    center = 2 ** len(result.groups.minus_one_components)
    a_group, a_n = len(result.groups.a), len(result.normalizer.symmetries)
    return OrderIdentityRecord(
        w_I=w_I,
        center=center,
        wperp=wperp,
        a_group=a_group,
        a_n=a_n,
        centralizer=center * wperp * a_group,
        normalizer=w_I * wperp * a_n,
    )


def build_report(
    result: PipelineResult, centralizer: bool = True, normalizer: bool = True
) -> AnalysisReport:
    graph = result.system.graph
    return AnalysisReport(
        name=graph.name,
        generators=list(graph.generators),
        subset=[graph.generators[i] for i in result.problem.x_I],
        cgraph=_cgraph_section(result),
        pi1=_pi1_section(result),
        wperp=_wperp_section(result),
        centralizer=_centralizer_section(result) if centralizer else None,
        normalizer=_normalizer_section(result) if normalizer else None,
        orders=order_identity(result),
    )


# -- text rendering --------------------------------------------------------


def _presentation_lines(title: str, record: PresentationRecord) -> List[str]:
    lines = [f"{title}: generators {', '.join(record.generators) or '(none)'}"]
    lines += [f"  [{r.kind}] {r.lhs} = {r.rhs}" for r in record.relations]
    if record.free_rank is not None:
        lines.append(f"  free of rank {record.free_rank}")
    if record.dihedral is not None:
        lines.append(
            f"  infinite dihedral ({record.dihedral.type_name}): "
            f"a' = {record.dihedral.a_prime}, b' = {record.dihedral.b_prime}"
        )
    return lines


def render_text(report: AnalysisReport) -> str:
    c = report.cgraph
    lines = [
        f"{report.name}: I = ({', '.join(report.subset)})",
        f"graph C: {len(c.vertices)} vertices, {c.loop_count} loops, {len(c.edges)} edges",
    ]
    for v in c.vertices:
        loops = f"  loops {', '.join(v.loops)}" if v.loops else ""
        lines.append(f"  v{v.index} = ({','.join(v.entries)}){loops}")
    lines.append(f"2-cells: {len(c.cells)}")
    lines += [f"  {cell}" for cell in c.cells]
    shuttling = [t for t in c.tours if t.kind == "shuttling"]
    lines.append(f"shuttling tours: {len(shuttling)}")
    lines += [f"  {' ~ '.join(t.loops)}  order {t.order}" for t in shuttling]
    lines += _presentation_lines("pi_1(Y; x_I)", report.pi1.presentation)
    for name, key in report.pi1.generator_edges.items():
        lines.append(f"  {name} = ({key})")

    w = report.wperp
    lines.append(f"W-perp window (bound {w.bound}): {len(w.classes)} classes")
    for cls in w.classes:
        lines.append(f"  r{cls.index} = r({cls.word}, {cls.loop})")
    for component in w.components:
        detail = component.type_name or component.witness or ""
        lines.append(f"  component {component.members}: {component.verdict} {detail}".rstrip())
    if w.symbolic:
        lines += [f"  {line}" for line in w.symbolic]

    if report.centralizer is not None:
        z = report.centralizer
        lines.append(f"Z(W_I): generated by {', '.join(z.center) or '1'}")
        lines.append(f"A-tilde: {', '.join(h.name for h in z.a_tilde)}")
        lines += _presentation_lines("B_I", z.b_presentation)
        lines.append(f"  splits: {'yes' if z.splits else 'unknown'}")
        if z.refined is not None:
            lines.append(f"  refined: finite part {z.refined.finite_types or ['trivial']}")
    if report.normalizer is not None:
        n = report.normalizer
        lines.append(f"A_N: {', '.join(n.symmetries)}")
        lines += _presentation_lines("Y-tilde_I", n.y_tilde_presentation)
        lines.append(f"  splits: {'yes' if n.splits else 'unknown'}")
    if report.orders is not None:
        o = report.orders
        lines.append(
            f"orders: |Z_W(W_I)| = {o.center}*{o.wperp}*{o.a_group} = {o.centralizer}, "
            f"|N_W(W_I)| = {o.w_I}*{o.wperp}*{o.a_n} = {o.normalizer}"
        )
    return "\n".join(lines)
