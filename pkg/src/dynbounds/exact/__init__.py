"""Exact baseline solvers and the brute-force oracles that certify them."""

from .cliques import clique_weight, enumerate_k_cliques, min_weight_clique
from .ed import as_labels, string_alignment, string_ed, string_ed_row
from .oracles import (
    BRUTE_TED_LIMIT,
    alignment_total,
    brute_force_ted,
    enumerate_alignments,
    negative_table,
    order_theoretic_valid,
    random_tree,
)
from .ted import ted, ted_with_alignment

__all__ = [
    "clique_weight", "enumerate_k_cliques", "min_weight_clique", "as_labels", "string_alignment",
    "string_ed", "string_ed_row", "BRUTE_TED_LIMIT", "alignment_total", "brute_force_ted",
    "enumerate_alignments", "negative_table", "order_theoretic_valid", "random_tree", "ted", "ted_with_alignment",
]
