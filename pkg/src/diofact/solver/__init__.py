"""Search and construction procedures for the equation families."""

from .types import SearchBounds, SearchResult, SolutionRecord
from .prune import prune_bertrand, prune_no_root_mod_q
from .power import construct_power_family, corollary_family, search_power
from .univariate import integer_poly_solutions, solve_univariate
from .forms import (search_binary_form, search_special_form_xy,
                    search_thue_mahler_form, solve_bivariate,
                    xy_product_solutions)
from .brocard import BrocardScanReport, scan_brocard

__all__ = [
    "SearchBounds", "SearchResult", "SolutionRecord",
    "prune_bertrand", "prune_no_root_mod_q",
    "construct_power_family", "corollary_family", "search_power",
    "integer_poly_solutions", "solve_univariate",
    "search_binary_form", "search_special_form_xy",
    "search_thue_mahler_form", "solve_bivariate", "xy_product_solutions",
    "BrocardScanReport", "scan_brocard",
]
