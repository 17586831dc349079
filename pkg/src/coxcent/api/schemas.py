from __future__ import annotations

from typing import Dict, List, Literal, Optional, Union

from pydantic import BaseModel, Field, field_validator, model_validator

SCHEMA_VERSION = "1.0"


# -- input document ---------------------------------------------------------


class EdgeRecord(BaseModel):
    a: str
    b: str
    m: Union[int, Literal["inf"]]

    @field_validator("m")
    @classmethod
    def validate_label(cls, v: Union[int, str]) -> Union[int, str]:
        if v != "inf" and int(v) < 2:
            raise ValueError(f"bond label must be an integer >= 2 or 'inf', got {v}")
        return v


class GraphDocument(BaseModel):
    name: str = "unnamed"
    generators: List[str]
    edges: List[EdgeRecord] = Field(default_factory=list)
    subset: List[str] = Field(default_factory=list)

    @model_validator(mode="after")
    def validate_references(self) -> "GraphDocument":
        seen = set()
        for i, g in enumerate(self.generators):
            if g in seen:
                raise ValueError(f"generators[{i}]: duplicate generator name {g!r}")
            seen.add(g)
        pairs = {}
        for i, edge in enumerate(self.edges):
            for field in ("a", "b"):
                if getattr(edge, field) not in seen:
                    raise ValueError(
                        f"edges[{i}].{field}: unknown generator {getattr(edge, field)!r}"
                    )
            if edge.a == edge.b:
                raise ValueError(f"edges[{i}]: an edge must join two distinct generators")
            key = frozenset((edge.a, edge.b))
            if key in pairs and pairs[key] != edge.m:
                raise ValueError(f"edges[{i}]: conflicting label for {edge.a}-{edge.b}")
            pairs[key] = edge.m
        chosen = set()
        for i, g in enumerate(self.subset):
            if g not in seen:
                raise ValueError(f"subset[{i}]: unknown generator {g!r}")
            if g in chosen:
                raise ValueError(f"subset[{i}]: duplicate generator {g!r}")
            chosen.add(g)
        return self


# -- analysis report -----------------------------------------------------------


class VertexRecord(BaseModel):
    index: int
    entries: List[str]
    loops: List[str] = Field(default_factory=list)


class GroupoidEdgeRecord(BaseModel):
    source: int
    generator: str
    target: int
    key: str


class TourRecord(BaseModel):
    kind: Literal["circular", "shuttling"]
    J: List[str]
    vertices: List[int]
    order: int
    loops: List[str] = Field(default_factory=list)


class CGraphSection(BaseModel):
    vertices: List[VertexRecord]
    loop_count: int
    edges: List[GroupoidEdgeRecord]
    cells: List[List[int]]
    tours: List[TourRecord]


class RelationRecord(BaseModel):
    kind: str
    lhs: str
    rhs: str


class DihedralRecord(BaseModel):
    a_prime: str
    b_prime: str
    type_name: str = "A~1"


class PresentationRecord(BaseModel):
    generators: List[str]
    relations: List[RelationRecord]
    free_rank: Optional[int] = None
    dihedral: Optional[DihedralRecord] = None


class Pi1Section(BaseModel):
    presentation: PresentationRecord
    generator_edges: Dict[str, str]
    tree_edges: List[str]
    y1_rank: int
    cell_count: int


class WPerpClassRecord(BaseModel):
    index: int
    word: str
    loop: str
    root: Dict[str, str]


class ComponentRecord(BaseModel):
    members: List[int]
    verdict: Literal["finite", "infinite", "unknown"]
    type_name: Optional[str] = None
    witness: Optional[str] = None
    criteria: List[str] = Field(default_factory=list)


class WPerpSection(BaseModel):
    bound: int
    classes: List[WPerpClassRecord]
    finite_orders: List[List[int]]
    components: List[ComponentRecord]
    rank_data: Dict[str, List[int]]
    y_fixes_checked: bool
    symbolic: Optional[List[str]] = None


class HalfTurnRecord(BaseModel):
    A: List[int]
    name: str
    target: str
    minus_one: bool


class RefinedRecord(BaseModel):
    finite_classes: List[int]
    finite_types: List[str]
    other_classes: List[int]


class CentralizerSection(BaseModel):
    center: List[str]
    a_tilde: List[HalfTurnRecord]
    a_basis: List[str]
    b_presentation: PresentationRecord
    tree_stable: bool
    splits: Optional[bool] = None
    nontrivial_cocycles: List[RelationRecord] = Field(default_factory=list)
    actions: Dict[str, List[Optional[int]]]
    refined: Optional[RefinedRecord] = None


class NormalizerSection(BaseModel):
    symmetries: List[str]
    generators: List[str]
    y_tilde_presentation: PresentationRecord
    tree_stable: bool
    splits: Optional[bool] = None
    nontrivial_cocycles: List[RelationRecord] = Field(default_factory=list)
    actions: Dict[str, List[Optional[int]]]


class OrderIdentityRecord(BaseModel):
    """Orders available when W^perp I is certified finite."""

    w_I: int
    center: int
    wperp: int
    a_group: int
    a_n: int
    centralizer: int
    normalizer: int


class AnalysisReport(BaseModel):
    schema_version: str = SCHEMA_VERSION
    name: str
    generators: List[str]
    subset: List[str]
    cgraph: CGraphSection
    pi1: Pi1Section
    wperp: WPerpSection
    centralizer: Optional[CentralizerSection] = None
    normalizer: Optional[NormalizerSection] = None
    orders: Optional[OrderIdentityRecord] = None


# -- oracle and table verification --------------------------------------------


class OracleResult(BaseModel):
    group_order: int
    centralizer_order: int
    normalizer_order: int
    centralizer_generators: List[List[str]]
    predicted_centralizer_order: Optional[int] = None
    predicted_normalizer_order: Optional[int] = None

    @property
    def compared(self) -> bool:
        return (
            self.predicted_centralizer_order is not None
            and self.predicted_normalizer_order is not None
        )

    @property
    def agrees(self) -> bool:
        """Both predictions exist and match the enumerated orders."""
        return (
            self.compared
            and self.predicted_centralizer_order == self.centralizer_order
            and self.predicted_normalizer_order == self.normalizer_order
        )


class TableCheckRecord(BaseModel):
    row: str
    instance: str
    expected: int
    formula: Optional[int] = None
    count: Optional[int] = None
    table: Optional[int] = None
    passed: bool


class TableCheckSummary(BaseModel):
    rows: List[TableCheckRecord]

    @property
    def failures(self) -> List[TableCheckRecord]:
        return [r for r in self.rows if not r.passed]
