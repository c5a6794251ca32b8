"""Enumeration of machine specs, the self-delimiting index code, and the
universal dispatcher ``U(code(i) + p) = T_i(p)``.

Specs are ordered first by number of states, then lexicographically by
their canonical serialization: cells in order ``(0,0), (0,1), (0,B),
(1,0), ...`` with the first cell most significant.  Within a cell, read
actions precede noread actions, and a sub-action is ranked by the digits
``(next, move, write, emit)``, most significant first, with ``next``
ordered ``0, 1, ..., n-1, H``.
"""

from __future__ import annotations

from functools import lru_cache

from .tm import (
    EMITS,
    HALT,
    MOVES,
    SYMBOLS,
    Action,
    Evaluator,
    MachineEvaluator,
    MachineSpec,
    RunResult,
    Status,
    SubAction,
    run,
)

__all__ = [
    "IncompleteCode",
    "subaction_count",
    "action_count",
    "spec_count",
    "index_offset",
    "encode_machine",
    "decode_machine",
    "code_I",
    "decode_I",
    "code_length",
    "covering_count",
    "universal_run",
    "PrefixDispatcher",
    "UniversalEvaluator",
]


class IncompleteCode(ValueError):
    """The bit string does not start with a complete codeword."""


def subaction_count(n: int) -> int:
    return 27 * (n + 1)


def action_count(n: int) -> int:
    s = subaction_count(n)
    return s * s + s


def spec_count(n: int) -> int:
    """Number of distinct ``n``-state specs."""
    return action_count(n) ** (3 * n)


def index_offset(n: int) -> int:
    """Index of the first ``n``-state spec."""
    return sum(spec_count(m) for m in range(1, n))


def _rank_sub(sub, n):
    nxt = n if sub.next_state == HALT else sub.next_state
    return ((nxt * 3 + MOVES.index(sub.move)) * 3 + SYMBOLS.index(sub.write)) * 3 + EMITS.index(sub.emit)


def _unrank_sub(r, n):
    r, emit = divmod(r, 3)
    r, write = divmod(r, 3)
    nxt, move = divmod(r, 3)
    return SubAction(SYMBOLS[write], MOVES[move], EMITS[emit], HALT if nxt == n else nxt)


def _rank_action(action: Action, n: int) -> int:
    s = subaction_count(n)
    if action.read:
        return _rank_sub(action.subs[0], n) * s + _rank_sub(action.subs[1], n)
    return s * s + _rank_sub(action.subs[0], n)


def _unrank_action(r: int, n: int) -> Action:
    s = subaction_count(n)
    if r < s * s:
        a, b = divmod(r, s)
        return Action(True, (_unrank_sub(a, n), _unrank_sub(b, n)))
    return Action(False, (_unrank_sub(r - s * s, n),))


def encode_machine(spec: MachineSpec) -> int:
    n = spec.num_states
    base = action_count(n)
    r = 0
    for row in spec.transitions:
        for action in row:
            r = r * base + _rank_action(action, n)
    return index_offset(n) + r


@lru_cache(maxsize=4096)
def decode_machine(i: int) -> MachineSpec:
    if i < 0:
        raise ValueError("machine index must be non-negative")
    n = 1
    while i >= spec_count(n):
        i -= spec_count(n)
        n += 1
    base = action_count(n)
    digits = []
    for _ in range(3 * n):
        i, d = divmod(i, base)
        digits.append(d)
    digits.reverse()
    rows = tuple(tuple(_unrank_action(digits[3 * s + k], n) for k in range(3)) for s in range(n))
    return MachineSpec(n, rows)


# --- index code: i -> 1^k 0 s, s the i-th string in shortlex order --------


def code_I(i: int) -> str:
    if i < 0:
        raise ValueError("index must be non-negative")
    k = (i + 1).bit_length() - 1
    s = format(i + 1 - (1 << k), f"0{k}b") if k else ""
    return "1" * k + "0" + s


def code_length(i: int) -> int:
    return 2 * ((i + 1).bit_length() - 1) + 1


def decode_I(bits: str) -> tuple[int, str]:
    """Split ``bits`` into ``(index, remainder)``; raise :class:`IncompleteCode` if truncated."""
    k = bits.find("0")
    if k < 0 or len(bits) < 2 * k + 1:
        raise IncompleteCode(f"no complete codeword in {bits!r}")
    s = bits[k + 1 : 2 * k + 1]
    i = (1 << k) - 1 + (int(s, 2) if s else 0)
    return i, bits[2 * k + 1 :]


def covering_count(max_len: int) -> int:
    """Number of indices whose codeword has length at most ``max_len``."""
    if max_len < 1:
        return 0
    return (1 << ((max_len - 1) // 2 + 1)) - 1


def universal_run(program: str, fuel: int) -> RunResult:
    """Decode ``code_I(i)`` (free of fuel) and run ``T_i`` on the remainder."""
    try:
        i, rest = decode_I(program)
    except IncompleteCode:
        return RunResult("", len(program), Status.AWAITING_INPUT)
    res = run(decode_machine(i), rest, fuel)
    return RunResult(res.output, res.consumed + len(program) - len(rest), res.status)


class _Decoding:
    __slots__ = ("bits",)
    output = ""
    status = Status.AWAITING_INPUT

    def __init__(self, bits):
        self.bits = bits

    @property
    def consumed(self):
        return len(self.bits)


class _Dispatched:
    """A node of the selected machine, with the codeword length added to ``consumed``."""

    __slots__ = ("inner", "evaluator", "offset")

    def __init__(self, inner, evaluator, offset):
        self.inner = inner
        self.evaluator = evaluator
        self.offset = offset

    @property
    def output(self):
        return self.inner.output

    @property
    def status(self):
        return self.inner.status

    @property
    def consumed(self):
        return self.inner.consumed + self.offset


@lru_cache(maxsize=4096)
def _machine_evaluator(i: int) -> MachineEvaluator:
    return MachineEvaluator(decode_machine(i), tag=f"T{i}")


class PrefixDispatcher(Evaluator):
    """Shared machinery for dispatchers that select a machine by an input prefix."""

    def lookup(self, bits: str):
        """Return a machine index, ``None`` while incomplete, or raise ``LookupError`` if dead."""
        raise NotImplementedError

    def start(self, fuel):
        return self._resolve("", fuel)

    def feed(self, node, bit, fuel):
        if node.status is not Status.AWAITING_INPUT:
            raise ValueError("node is not waiting for input")
        if isinstance(node, _Decoding):
            return self._resolve(node.bits + bit, fuel)
        return _Dispatched(node.evaluator.feed(node.inner, bit, fuel), node.evaluator, node.offset)

    def _resolve(self, bits, fuel):
        try:
            i = self.lookup(bits)
        except LookupError:
            return _Dead(len(bits))
        if i is None:
            return _Decoding(bits)
        ev = _machine_evaluator(i)
        return _Dispatched(ev.start(fuel), ev, len(bits))


class _Dead:
    __slots__ = ("consumed",)
    output = ""
    status = Status.HALTED

    def __init__(self, consumed):
        self.consumed = consumed


class UniversalEvaluator(PrefixDispatcher):
    """The reference universal machine built by adjunction over ``code_I``."""

    tag = "U"

    def lookup(self, bits):
        try:
            return decode_I(bits)[0]
        except IncompleteCode:
            return None

    def run(self, program, fuel):
        return universal_run(program, fuel)
