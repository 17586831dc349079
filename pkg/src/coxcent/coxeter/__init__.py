"""Coxeter graphs, the finite-type catalog and the geometric representation."""

from .catalog import (
    FiniteTypeLabel,
    catalog_graph,
    classify_finite_type,
    coxeter_group_order,
    minus_one_type,
    tilde_closure,
    w0_diagram_action,
)
from .geometry import CoxeterGeometry, GroupElement, RootVector
from .graph import INFINITY, CoxeterGraph, Problem, parse_document, parse_graph
from .system import CoxeterSystem

__all__ = [
    "INFINITY",
    "CoxeterGeometry",
    "CoxeterGraph",
    "CoxeterSystem",
    "FiniteTypeLabel",
    "GroupElement",
    "Problem",
    "RootVector",
    "catalog_graph",
    "classify_finite_type",
    "coxeter_group_order",
    "minus_one_type",
    "parse_document",
    "parse_graph",
    "tilde_closure",
    "w0_diagram_action",
]
