"""Budgeted lower approximations of the semimeasure ``lambda_T``.

``lambda_T(x)`` is the uniform measure of the minimal programs on which
``T`` produces output extending ``x``.  At a budget ``(L, t)`` only
programs of length at most ``L`` and runs of at most ``t`` steps are
considered, which yields a value that is nondecreasing in both ``L`` and
``t``.

The search walks the tree of input prefixes, branching only where the
machine asks for another input bit.  Each child resumes from the
parent's configuration, so no step is simulated twice.
"""

from __future__ import annotations

import csv
import io
import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product
from typing import Callable, Iterable, Iterator

from .dyadic import ONE, ZERO, Dyadic
from .enumeration import UniversalEvaluator, decode_machine
from .tm import Evaluator, MachineEvaluator, Status, as_evaluator

__all__ = [
    "Budget",
    "ApproxTable",
    "strings_upto",
    "minimal_programs",
    "approx_lambda",
    "tabulate",
    "check_semimeasure",
    "machine_table",
    "universal_table",
    "machine_tables",
    "worker_count",
    "parallel_map",
]


@dataclass(frozen=True)
class Budget:
    max_len: int
    fuel: int

    def __post_init__(self):
        if self.max_len < 0 or self.fuel < 0:
            raise ValueError("budget components must be non-negative")

    def shorten(self, k: int) -> Budget | None:
        """Budget left for the program after a ``k``-bit prefix, or ``None`` if none is left."""
        if k > self.max_len:
            return None
        return Budget(self.max_len - k, self.fuel)

    def to_dict(self):
        return {"max_len": self.max_len, "fuel": self.fuel}


def strings_upto(n: int) -> Iterator[str]:
    """All binary strings of length ``<= n`` in shortlex order."""
    for k in range(n + 1):
        for bits in product("01", repeat=k):
            yield "".join(bits)


@dataclass(frozen=True)
class ApproxTable:
    """Semimeasure values for every string of length at most ``depth``."""

    machine: str
    budget: Budget | None
    depth: int
    values: dict[str, Dyadic] = field(repr=False)

    def __getitem__(self, x: str) -> Dyadic:
        return self.values[x]

    def __call__(self, x: str) -> Dyadic:
        return self.values[x]

    def __iter__(self):
        return iter(self.values)

    def __len__(self):
        return len(self.values)

    def items(self):
        return self.values.items()

    def to_rows(self) -> list[tuple[str, int, int]]:
        return [(x, *v.to_pair()) for x, v in self.values.items()]

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["x", "value_mantissa", "value_exponent"])
        writer.writerows(self.to_rows())
        return buf.getvalue()

    def to_dict(self) -> dict:
        return {
            "machine": self.machine,
            "budget": self.budget.to_dict() if self.budget else None,
            "depth": self.depth,
            "values": [{"x": x, "mantissa": m, "exponent": e} for x, m, e in self.to_rows()],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    @classmethod
    def from_dict(cls, data: dict) -> ApproxTable:
        budget = Budget(**data["budget"]) if data.get("budget") else None
        values = {row["x"]: Dyadic(row["mantissa"], row["exponent"]) for row in data["values"]}
        return cls(data["machine"], budget, data["depth"], values)

    @classmethod
    def from_json(cls, text: str) -> ApproxTable:
        return cls.from_dict(json.loads(text))

    @classmethod
    def from_evaluator(cls, fn: Callable[[str], Dyadic], depth: int, machine: str, budget=None) -> ApproxTable:
        return cls(machine, budget, depth, {x: fn(x) for x in strings_upto(depth)})


def _search(ev: Evaluator, x: str, budget: Budget) -> Iterator[str]:
    stack = [("", ev.start(budget.fuel))]
    while stack:
        p, node = stack.pop()
        out = node.output
        if out.startswith(x):
            yield p
        elif (
            x.startswith(out)
            and node.status is Status.AWAITING_INPUT
            and len(p) < budget.max_len
        ):
            stack.append((p + "1", ev.feed(node, "1", budget.fuel)))
            stack.append((p + "0", ev.feed(node, "0", budget.fuel)))


def minimal_programs(machine, x: str, budget: Budget) -> set[str]:
    """Minimal input prefixes after which the machine's output extends ``x``.

    The result is prefix-free: a branch stops as soon as it succeeds.
    """
    return set(_search(as_evaluator(machine), x, budget))


def approx_lambda(machine, x: str, budget: Budget) -> Dyadic:
    L = budget.max_len
    total = sum(1 << (L - len(p)) for p in _search(as_evaluator(machine), x, budget))
    return Dyadic(total, L)


def tabulate(machine, depth: int, budget: Budget) -> ApproxTable:
    """Values for every ``x`` with ``len(x) <= depth`` from a single tree walk.

    A node with program ``p`` is the minimal program for exactly those
    prefixes of its output that its parent's output did not yet cover.
    """
    if depth < 0:
        raise ValueError("depth must be non-negative")
    ev = as_evaluator(machine)
    L, fuel = budget.max_len, budget.fuel
    counts = dict.fromkeys(strings_upto(depth), 0)
    stack = [(0, -1, ev.start(fuel))]
    while stack:
        plen, covered, node = stack.pop()
        out = node.output[:depth]
        if len(out) > covered:
            weight = 1 << (L - plen)
            for m in range(covered + 1, len(out) + 1):
                counts[out[:m]] += weight
        if len(out) < depth and node.status is Status.AWAITING_INPUT and plen < L:
            covered = len(out)
            stack.append((plen + 1, covered, ev.feed(node, "1", fuel)))
            stack.append((plen + 1, covered, ev.feed(node, "0", fuel)))
    values = {x: Dyadic(c, L) for x, c in counts.items()}
    return ApproxTable(ev.tag, budget, depth, values)


def check_semimeasure(table: ApproxTable) -> list[str]:
    """Strings at which ``table`` breaks a semimeasure condition.

    Checked: ``0 <= v(x) <= 1`` and ``v(x) >= v(x0) + v(x1)`` wherever the
    children are present.
    """
    bad = []
    for x, v in table.items():
        children = [table.values.get(x + b) for b in "01"]
        if v < ZERO or v > ONE:
            bad.append(x)
        elif None not in children and v < children[0] + children[1]:
            bad.append(x)
    return bad


# --- cached tables and worker pool ----------------------------------------


@lru_cache(maxsize=None)
def machine_table(i: int, depth: int, budget: Budget) -> ApproxTable:
    """Table of the ``i``-th enumerated machine (cached)."""
    return tabulate(MachineEvaluator(decode_machine(i), tag=f"T{i}"), depth, budget)


@lru_cache(maxsize=None)
def universal_table(depth: int, budget: Budget) -> ApproxTable:
    return tabulate(UniversalEvaluator(), depth, budget)


def worker_count() -> int:
    """Worker cap from ``SOLOLAB_THREADS`` (default 1, i.e. serial)."""
    raw = os.environ.get("SOLOLAB_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def _table_job(args):
    return machine_table(*args)


def machine_tables(jobs: Iterable[tuple[int, int, Budget]]) -> list[ApproxTable]:
    """``machine_table`` over ``jobs``, in order, on up to ``worker_count()`` processes."""
    return parallel_map(_table_job, list(jobs))


def parallel_map(fn, items: list) -> list:
    workers = min(worker_count(), len(items))
    if workers <= 1:
        return [fn(item) for item in items]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))
