"""Desk-scale laboratory for universal priors on monotone Turing machines."""

from .dyadic import ONE, ZERO, Dyadic
from .enumeration import code_I, decode_I, decode_machine, encode_machine, universal_run, UniversalEvaluator
from .gap import DeltaPrime, delta_prime_dominance_check, gap_report, make_delta_prime
from .kraft import KraftAllocator, KraftExhausted, decompose_weights, synthesize_universal
from .mixture import WeightScheme, dominance_check, mixture_eval, mixture_table, split_sum_check
from .semimeasure import ApproxTable, Budget, approx_lambda, check_semimeasure, minimal_programs, tabulate
from .tm import MachineSpec, RunResult, Status, parse_machine, run

__version__ = "0.1.0"

__all__ = [
    "ONE", "ZERO", "Dyadic",
    "code_I", "decode_I", "decode_machine", "encode_machine", "universal_run", "UniversalEvaluator",
    "DeltaPrime", "delta_prime_dominance_check", "gap_report", "make_delta_prime",
    "KraftAllocator", "KraftExhausted", "decompose_weights", "synthesize_universal",
    "WeightScheme", "dominance_check", "mixture_eval", "mixture_table", "split_sum_check",
    "ApproxTable", "Budget", "approx_lambda", "check_semimeasure", "minimal_programs", "tabulate",
    "MachineSpec", "RunResult", "Status", "parse_machine", "run",
]
