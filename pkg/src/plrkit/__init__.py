"""Exact enumeration, counting, and classification of partial Latin rectangles.

A partial Latin rectangle is an r x s array over symbols 1..n whose cells may
be empty and in which no symbol repeats within a row or column.  This package
counts them exactly — by size, shape, type, and structure — through several
independent backends, classifies them into isotopy and main classes, and
builds the incidence-structure (seminet) census for square regular arrays.
"""

from .core import (
    Dims,
    Entry,
    Isotopism,
    Parastrophe,
    PartialLatinRectangle,
    apply_isotopism,
    conjugate,
    dominates,
    from_grid,
    is_noncompressible,
    is_regular,
    iter_all_plrs,
    make_plr,
    parastrophe,
    plr_from_text,
    plr_to_text,
    structure_of,
    type_of,
    valid_parastrophisms,
)
from .counting import (
    aggregate_size,
    build_rho_table,
    canonical_structure_triple,
    closed_form_count,
    closed_form_diagonal,
    count_type,
    count_type_regular,
    feasibility_precheck,
    full_fill_count,
    latin_square_count,
    partitions,
    plex_lower_bound,
    rho,
    size_spectrum,
    sym_poly,
    type_arrangements,
)
from .classify import (
    ISOTOPISM,
    PARATOPISM,
    ClassReport,
    GroupSpec,
    canonical_form,
    class_representatives,
    classify_structure_triple,
)
from .seminets import (
    MAX_CENSUS_RANK,
    NAMED_GRIDS,
    CensusRecord,
    Seminet,
    census,
    census_jsonl,
    is_configuration,
    is_connected,
    is_n_regular,
    l_order,
    min_line_size,
    named_plr,
    point_rank,
    seminet_from_pls,
)
from .verify import VerifyRow, all_pass, summary_lines, verify_tables
from . import errors

__version__ = "0.1.0"

__all__ = [
    "Dims",
    "Entry",
    "Isotopism",
    "Parastrophe",
    "PartialLatinRectangle",
    "apply_isotopism",
    "conjugate",
    "dominates",
    "from_grid",
    "is_noncompressible",
    "is_regular",
    "iter_all_plrs",
    "make_plr",
    "parastrophe",
    "plr_from_text",
    "plr_to_text",
    "structure_of",
    "type_of",
    "valid_parastrophisms",
    "aggregate_size",
    "build_rho_table",
    "canonical_structure_triple",
    "closed_form_count",
    "closed_form_diagonal",
    "count_type",
    "count_type_regular",
    "feasibility_precheck",
    "full_fill_count",
    "latin_square_count",
    "partitions",
    "plex_lower_bound",
    "rho",
    "size_spectrum",
    "sym_poly",
    "type_arrangements",
    "ISOTOPISM",
    "PARATOPISM",
    "ClassReport",
    "GroupSpec",
    "canonical_form",
    "class_representatives",
    "classify_structure_triple",
    "MAX_CENSUS_RANK",
    "NAMED_GRIDS",
    "CensusRecord",
    "Seminet",
    "census",
    "census_jsonl",
    "is_configuration",
    "is_connected",
    "is_n_regular",
    "l_order",
    "min_line_size",
    "named_plr",
    "point_rank",
    "seminet_from_pls",
    "VerifyRow",
    "all_pass",
    "summary_lines",
    "verify_tables",
    "errors",
    "__version__",
]
