"""Truncated universal mixtures and the identities relating them to ``lambda_U``.

A weight ``w_i`` is a dyadic rational, so it splits into finitely many
terms ``2**-k``.  Each term is evaluated at the length budget left over
after a ``k``-bit prefix: this is exactly what a dispatcher that selects
``T_i`` with a ``k``-bit codeword sees, and it makes the identities below
exact equalities at every budget rather than asymptotic ones.  For the
default weights ``2**-len(code_I(i))`` each weight is a single term.
"""

from __future__ import annotations

import json

from .dyadic import ONE, ZERO, Dyadic
from .enumeration import code_length, covering_count, decode_machine
from .reports import CheckReport
from .semimeasure import (
    ApproxTable,
    Budget,
    approx_lambda,
    machine_tables,
    strings_upto,
    universal_table,
)

__all__ = [
    "InvalidWeights",
    "BudgetTooSmall",
    "WeightScheme",
    "mixture_eval",
    "mixture_table",
    "split_sum_check",
    "dominance_check",
]


class InvalidWeights(ValueError):
    pass


class BudgetTooSmall(ValueError):
    pass


class WeightScheme:
    """Positive dyadic weights ``w_0 .. w_{N-1}`` with ``sum(w) <= 1``."""

    def __init__(self, weights):
        weights = tuple(w if isinstance(w, Dyadic) else Dyadic.parse(str(w)) for w in weights)
        if not weights:
            raise InvalidWeights("a weight scheme needs at least one machine")
        for i, w in enumerate(weights):
            if w <= ZERO:
                raise InvalidWeights(f"weight {i} is {w}; weights must be strictly positive")
        total = sum(weights, ZERO)
        if total > ONE:
            raise InvalidWeights(f"weights sum to {total} > 1")
        self.weights = weights
        self.total = total
        self.default = False

    @classmethod
    def default_for(cls, n: int) -> WeightScheme:
        """``w_i = 2**-len(code_I(i))`` for ``i < n``."""
        scheme = cls(Dyadic.pow2(code_length(i)) for i in range(n))
        scheme.default = True
        return scheme

    @classmethod
    def from_json(cls, text: str) -> WeightScheme:
        """Accepts ``{"weights": [...]}`` or a bare list; entries are ``"3/16"`` or ``[m, e]``."""
        data = json.loads(text)
        if isinstance(data, dict):
            data = data["weights"]
        try:
            return cls(Dyadic(*w) if isinstance(w, list) else Dyadic.parse(str(w)) for w in data)
        except (TypeError, ValueError) as exc:
            if isinstance(exc, InvalidWeights):
                raise
            raise InvalidWeights(str(exc)) from exc

    def __len__(self):
        return len(self.weights)

    def __repr__(self):
        return f"WeightScheme([{', '.join(map(str, self.weights))}])"

    def terms(self) -> list[tuple[int, int]]:
        """``(i, k)`` for every dyadic term ``2**-k`` of every weight, in order."""
        return [(i, k) for i, w in enumerate(self.weights) for k in w.binary_expansion()]

    def to_dict(self):
        return {"weights": [list(w.to_pair()) for w in self.weights]}


def mixture_eval(scheme: WeightScheme, x: str, budget: Budget) -> Dyadic:
    """``sum_i w_i * lambda_{T_i}(x)`` with each term at its matched budget."""
    total = ZERO
    for i, k in scheme.terms():
        sub = budget.shorten(k)
        if sub is not None:
            total += approx_lambda(decode_machine(i), x, sub).ldexp(-k)
    return total


def mixture_table(scheme: WeightScheme, depth: int, budget: Budget) -> ApproxTable:
    live = [(i, k, budget.shorten(k)) for i, k in scheme.terms()]
    live = [(i, k, sub) for i, k, sub in live if sub is not None]
    tables = machine_tables((i, depth, sub) for i, _, sub in live)
    values = dict.fromkeys(strings_upto(depth), ZERO)
    for (_, k, _), table in zip(live, tables):
        for x, v in table.items():
            if v:
                values[x] += v.ldexp(-k)
    return ApproxTable("mixture", budget, depth, values)


def split_sum_check(depth: int, budget: Budget, n_machines: int | None = None) -> CheckReport:
    """Compare ``lambda_U`` with the default mixture for every ``x != ""``.

    ``n_machines`` must cover every index whose codeword fits in the
    length budget; it defaults to exactly that many.
    """
    needed = covering_count(budget.max_len)
    n = needed if n_machines is None else n_machines
    if n < needed:
        raise ValueError(f"N={n} does not cover all {needed} codewords of length <= {budget.max_len}")
    left = universal_table(depth, budget)
    rows, bad = [], []
    if n == 0:
        right = ApproxTable("mixture", budget, depth, dict.fromkeys(strings_upto(depth), ZERO))
    else:
        right = mixture_table(WeightScheme.default_for(n), depth, budget)
    for x in strings_upto(depth):
        if not x:
            continue
        equal = left[x] == right[x]
        rows.append({"x": x, "left": left[x], "right": right[x], "equal": equal})
        if not equal:
            bad.append(x)
    report = CheckReport("split-sum", {"depth": depth, "budget": budget.to_dict(), "N": n}, rows, bad)
    report.notes.append(f"root excluded: lambda_U('')={left['']}, mixture('')={right['']}")
    return report


def dominance_check(j: int, depth: int, budget: Budget) -> tuple[Dyadic, CheckReport]:
    """Check ``lambda_U(x) >= 2**-len(code_I(j)) * lambda_{T_j}(x)`` for ``x != ""``.

    ``lambda_{T_j}`` is taken at the budget left after the codeword.
    """
    ell = code_length(j)
    sub = budget.shorten(ell)
    if sub is None:
        raise BudgetTooSmall(f"codeword of machine {j} has length {ell} > max_len {budget.max_len}")
    constant = Dyadic.pow2(ell)
    big = universal_table(depth, budget)
    (small,) = machine_tables([(j, depth, sub)])
    rows, bad = [], []
    for x in strings_upto(depth):
        if not x:
            continue
        bound = constant * small[x]
        holds = big[x] >= bound
        rows.append({"x": x, "M": big[x], "bound": bound, "holds": holds})
        if not holds:
            bad.append(x)
    params = {"j": j, "depth": depth, "budget": budget.to_dict(), "constant": constant}
    return constant, CheckReport("dominance", params, rows, bad)
