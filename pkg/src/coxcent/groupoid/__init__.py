"""The groupoid C, the complex Y, W^perp I and the outer symmetry layers."""

from .cgraph import CGraph, Groupoid, GroupoidEdge, build_cgraph, expand_generator
from .presentations import (
    GroupPresentation,
    Pi1Presentation,
    SpanningTree,
    build_tree,
    pi1_presentation,
    recognize_infinite_dihedral,
)
from .symmetry import (
    AGroups,
    HalfTurn,
    NormalizerAssembly,
    NormalizerSymmetry,
    act_on_wperp,
    b_presentation,
    compute_A_groups,
    decompose_element,
    decompose_normalizer_element,
    normalizer_assembly,
)
from .tours import ShuttlingTour, TwoCell, classify_tours, enumerate_components
from .wperp import WPerpWindow, expand_wperp, finite_part, symbolic_wperp

__all__ = [
    "AGroups",
    "CGraph",
    "GroupPresentation",
    "Groupoid",
    "GroupoidEdge",
    "HalfTurn",
    "NormalizerAssembly",
    "NormalizerSymmetry",
    "Pi1Presentation",
    "ShuttlingTour",
    "SpanningTree",
    "TwoCell",
    "WPerpWindow",
    "act_on_wperp",
    "b_presentation",
    "build_cgraph",
    "build_tree",
    "classify_tours",
    "compute_A_groups",
    "decompose_element",
    "decompose_normalizer_element",
    "enumerate_components",
    "expand_generator",
    "expand_wperp",
    "finite_part",
    "normalizer_assembly",
    "pi1_presentation",
    "recognize_infinite_dihedral",
    "symbolic_wperp",
]
