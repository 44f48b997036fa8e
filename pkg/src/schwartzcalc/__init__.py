"""Multiplication and convolution calculus over the classical distribution spaces."""

from .engine import audit_ehrenpreis, classify_map, infer, parse, result_space
from .errors import CalculusError
from .functions import membership
from .literals import parse_distribution, parse_function, parse_seminorm
from .seminorms import eval_seminorm, lp_norm, seminorm_is_norm
from .spaces import Kind, Space, fourier_image, includes, parse_space
from .table import Op, Verdict, emit_table, known_continuous_maps, known_discontinuous_maps
from .witnesses import check_continuity_bound, oc_cauchy_check, run_witness, witness_for

__version__ = "0.1.0"
