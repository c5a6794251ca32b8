"""Gap analysis and a dominant semimeasure with no gap at the root.

For a semimeasure ``v`` the gap at ``x`` is ``v(x) - v(x0) - v(x1)``.
Solomonoff priors have relative gaps bounded below by roughly
``c * 2**-K(len(x))``.  ``K`` is not computable, so the bound here uses
the length of the index code of ``len(x)``, which is a computable upper
bound on it up to a constant, and the constant ``c`` is supplied by the
caller.

``DeltaPrime`` rescales a dominant semimeasure so that ``v(0) + v(1) ==
v("")``: it still dominates everything, but its zero root gap rules it
out as a mixture.
"""

from __future__ import annotations

from typing import Callable

from .dyadic import ONE, ZERO, Dyadic
from .enumeration import code_length
from .mixture import WeightScheme, mixture_table
from .reports import CheckReport
from .semimeasure import ApproxTable, Budget, machine_tables, strings_upto

__all__ = [
    "NOT_A_MIXTURE",
    "length_code_bound",
    "gap_report",
    "DeltaPrime",
    "make_delta_prime",
    "delta_prime_table",
    "delta_prime_dominance_check",
]

NOT_A_MIXTURE = "not-a-mixture"
HALF = Dyadic(1, 1)


def length_code_bound(c: Dyadic, n: int) -> Dyadic:
    """``c * 2**-len(code_I(n))``."""
    return c * Dyadic.pow2(code_length(n))


def gap_report(table: ApproxTable, c: Dyadic) -> CheckReport:
    """Gaps, relative gaps and bound comparison for every ``x`` shorter than the table depth.

    A string is flagged when ``v(x) > 0`` and its relative gap is below the
    bound; a negative gap is flagged too.  The comparison is done as
    ``gap < bound * v(x)`` so it stays exact.
    """
    rows, flagged = [], []
    for x in strings_upto(table.depth - 1):
        v = table[x]
        gap = v - table[x + "0"] - table[x + "1"]
        bound = length_code_bound(c, len(x))
        rel = gap.to_fraction() / v.to_fraction() if v else None
        flag = gap < ZERO or (v > ZERO and gap < bound * v)
        rows.append(
            {
                "x": x,
                "value": v,
                "gap": gap,
                "relative_gap": None if rel is None else [rel.numerator, rel.denominator],
                "bound": bound,
                "flag": flag,
            }
        )
        if flag:
            flagged.append(x)
    report = CheckReport(
        "gap",
        {"machine": table.machine, "depth": table.depth, "c": c,
         "budget": table.budget.to_dict() if table.budget else None},
        rows,
        flagged,
    )
    if "" in flagged and rows[0]["gap"] == ZERO:
        report.notes.append(f"{NOT_A_MIXTURE}: root gap 0")
    elif flagged:
        report.notes.append(f"{NOT_A_MIXTURE}: relative gap below bound at {len(flagged)} string(s), at budget")
    return report


class DeltaPrime:
    """``d'("") = 1``, ``d'(0) = d'(1) = 1/2``, ``d'(bx) = d(bx) / 2`` otherwise."""

    def __init__(self, base: Callable[[str], Dyadic]):
        self.base = base

    def __call__(self, x: str) -> Dyadic:
        if not x:
            return ONE
        if len(x) == 1:
            return HALF
        return self.base(x).ldexp(-1)


def make_delta_prime(base) -> DeltaPrime:
    return DeltaPrime(base)


def delta_prime_table(base: ApproxTable) -> ApproxTable:
    return ApproxTable.from_evaluator(DeltaPrime(base), base.depth, f"delta'({base.machine})", base.budget)


def delta_prime_dominance_check(scheme: WeightScheme, j: int, depth: int, budget: Budget) -> CheckReport:
    """Check ``d'(x) >= (w_j / 2) * lambda_{T_j}(x)`` for ``x != ""``, ``d'`` built over ``scheme``.

    ``lambda_{T_j}`` is taken at the budget left after the longest
    codeword of ``w_j``, where every term of ``w_j`` still dominates it.
    """
    if not 0 <= j < len(scheme):
        raise ValueError(f"machine {j} is not covered by the scheme (N={len(scheme)})")
    w = scheme.weights[j]
    sub = budget.shorten(max(w.binary_expansion()))
    if sub is None:
        raise ValueError(f"weight of machine {j} needs codewords longer than max_len {budget.max_len}")
    delta = DeltaPrime(mixture_table(scheme, depth, budget))
    (small,) = machine_tables([(j, depth, sub)])
    constant = w.ldexp(-1)
    rows, bad = [], []
    for x in strings_upto(depth):
        if not x:
            continue
        bound = constant * small[x]
        holds = delta(x) >= bound
        rows.append({"x": x, "delta_prime": delta(x), "bound": bound, "holds": holds})
        if not holds:
            bad.append(x)
    params = {"j": j, "depth": depth, "budget": budget.to_dict(), "constant": constant}
    return CheckReport("delta-prime-dominance", params, rows, bad)
