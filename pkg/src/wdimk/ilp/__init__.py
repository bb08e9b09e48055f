"""Integer programs for wdim_k on K_n x K_m: builders, LP text I/O and exact solvers."""
from .formulations import (
    BUILDERS,
    build_fgh,
    build_fs,
    build_fs_minus,
    coefficient_a,
    coefficient_row,
    corners,
    index_set_iuv,
)
from .lpformat import dumps, export_lp, loads, parse_lp
from .model import Constraint, IlpModel, Variable
from .solver import SolveResult, solve
