"""Graphs, trees, cost tables, alignments and their file formats."""

from .alignment import (
    ANCESTRY,
    PREORDER,
    REUSE,
    AlignmentReport,
    InvalidAlignment,
    Violation,
    alignment_cost,
    validate_alignment,
)
from .costs import EPS, CostTable
from .extint import TOP, ExtInt, ext_add, ext_min, is_top
from .graph import Graph
from .labels import REGISTRY, LabelRegistry, lab, labs, name_of
from .tree import (
    Delete,
    InsertLeaf,
    InsertParent,
    Relabel,
    Tree,
    TreeBuilder,
    TreeError,
    apply_script,
    apply_update,
    inverse_update,
    left_attach,
    path_gadget,
    right_attach,
    single,
)

__all__ = [
    "ANCESTRY", "PREORDER", "REUSE", "AlignmentReport", "InvalidAlignment", "Violation",
    "alignment_cost", "validate_alignment", "EPS", "CostTable", "TOP", "ExtInt", "ext_add",
    "ext_min", "is_top", "Graph", "REGISTRY", "LabelRegistry", "lab", "labs", "name_of",
    "Delete", "InsertLeaf", "InsertParent", "Relabel", "Tree", "TreeBuilder", "TreeError",
    "apply_script", "apply_update", "inverse_update", "left_attach", "path_gadget",
    "right_attach", "single",
]
