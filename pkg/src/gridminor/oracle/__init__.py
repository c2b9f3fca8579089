from .budget import EXHAUSTED, NO, YES, BudgetExhausted, Meter, SearchBudget, UNLIMITED
from .minor import GmResult, MinorResult, degree3_core, gm_exact, gm_upper_bound, has_minor
from .treewidth import (
    TreeDecomposition,
    TreewidthResult,
    check_tree_decomposition,
    decomposition_from_order,
    elimination_width,
    treewidth_exact,
    treewidth_lower_bound,
    treewidth_upper_bound,
)
from .fvs import FvsResult, min_fvs
from .bramble import BrambleOrderResult, bramble_order, min_hitting_set

__all__ = [
    "EXHAUSTED", "NO", "UNLIMITED", "YES", "BrambleOrderResult", "BudgetExhausted", "FvsResult", "GmResult",
    "Meter", "MinorResult", "SearchBudget", "TreeDecomposition", "TreewidthResult", "bramble_order",
    "check_tree_decomposition", "decomposition_from_order", "degree3_core", "elimination_width", "gm_exact",
    "gm_upper_bound", "has_minor", "min_fvs", "min_hitting_set", "treewidth_exact", "treewidth_lower_bound",
    "treewidth_upper_bound",
]
