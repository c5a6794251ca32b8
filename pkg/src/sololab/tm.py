"""Monotone Turing machines: model, interpreter and the textual table format.

A machine has a one-way read-only binary input tape, a two-way work tape
over ``{0, 1, B}`` and an append-only binary output tape.  Each transition
either ignores the input or reads one input bit and branches on it.

Textual format, one row per ``(state, symbol)`` cell::

    states 1
    0 0 -> read (0 L - 0)(0 L 0 0)
    0 1 -> noread (1 S - H)
    0 B -> read (B S 0 0)(B S 1 0)

A sub-action is ``write move emit next`` with ``write`` in ``0 1 B``,
``move`` in ``L R S``, ``emit`` in ``- 0 1`` and ``next`` a state number
or ``H``.  ``#`` starts a comment.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from typing import NamedTuple

__all__ = [
    "HALT",
    "SYMBOLS",
    "MOVES",
    "EMITS",
    "SubAction",
    "Action",
    "MachineSpec",
    "Status",
    "RunResult",
    "run",
    "Evaluator",
    "MachineEvaluator",
    "as_evaluator",
    "parse_machine",
    "format_machine",
    "MachineFormatError",
    "MachineSyntaxError",
    "NonTotalTable",
    "BadStateRef",
]

HALT = -1
SYMBOLS = ("0", "1", "B")
MOVES = ("L", "R", "S")
EMITS = (None, "0", "1")
BLANK = 2
_STEP = {"L": -1, "R": 1, "S": 0}


@dataclass(frozen=True)
class SubAction:
    write: str
    move: str
    emit: str | None
    next_state: int

    def __post_init__(self):
        if self.write not in SYMBOLS:
            raise ValueError(f"bad work symbol {self.write!r}")
        if self.move not in MOVES:
            raise ValueError(f"bad move {self.move!r}")
        if self.emit not in EMITS:
            raise ValueError(f"bad emit {self.emit!r}")


@dataclass(frozen=True)
class Action:
    read: bool
    subs: tuple[SubAction, ...]

    def __post_init__(self):
        if len(self.subs) != (2 if self.read else 1):
            raise ValueError("a read action needs two sub-actions, a noread action one")

    @classmethod
    def noread(cls, sub: SubAction) -> Action:
        return cls(False, (sub,))

    @classmethod
    def reading(cls, on0: SubAction, on1: SubAction) -> Action:
        return cls(True, (on0, on1))


@dataclass(frozen=True)
class MachineSpec:
    """Transition table; ``transitions[state][sym]`` with ``sym`` indexing ``SYMBOLS``."""

    num_states: int
    transitions: tuple[tuple[Action, Action, Action], ...]

    def __post_init__(self):
        if self.num_states < 1:
            raise ValueError("a machine needs at least one state")
        if len(self.transitions) != self.num_states or any(len(row) != 3 for row in self.transitions):
            raise ValueError("transition table must be total over states x {0,1,B}")
        for row in self.transitions:
            for action in row:
                for sub in action.subs:
                    if sub.next_state != HALT and not 0 <= sub.next_state < self.num_states:
                        raise ValueError(f"next state {sub.next_state} out of range")


class Status(enum.Enum):
    HALTED = "Halted"
    FUEL_EXHAUSTED = "FuelExhausted"
    AWAITING_INPUT = "AwaitingInput"


class RunResult(NamedTuple):
    output: str
    consumed: int
    status: Status


def run(spec: MachineSpec, program: str, fuel: int) -> RunResult:
    """Run ``spec`` from its initial configuration on ``program``.

    One unit of fuel is spent per transition.  The run stops at ``HALT``,
    when fuel runs out, or when a read would go past the end of ``program``.
    """
    if fuel < 0:
        raise ValueError("fuel must be non-negative")
    table = spec.transitions
    tape: dict[int, int] = {}
    out: list[str] = []
    state = head = consumed = steps = 0
    while True:
        if state == HALT:
            return RunResult("".join(out), consumed, Status.HALTED)
        if steps >= fuel:
            return RunResult("".join(out), consumed, Status.FUEL_EXHAUSTED)
        action = table[state][tape.get(head, BLANK)]
        if action.read:
            if consumed == len(program):
                return RunResult("".join(out), consumed, Status.AWAITING_INPUT)
            sub = action.subs[program[consumed] == "1"]
            consumed += 1
        else:
            sub = action.subs[0]
        tape[head] = SYMBOLS.index(sub.write)
        if sub.emit is not None:
            out.append(sub.emit)
        head += _STEP[sub.move]
        state = sub.next_state
        steps += 1


class _Config:
    """Machine configuration frozen at a read point (or at a terminal state)."""

    __slots__ = ("state", "head", "tape", "output", "consumed", "steps", "status")

    def __init__(self, state, head, tape, output, consumed, steps, status=None):
        self.state = state
        self.head = head
        self.tape = tape
        self.output = output
        self.consumed = consumed
        self.steps = steps
        self.status = status


def _compile(spec: MachineSpec):
    # (read, ((write_idx, delta, emit, next), ...)) per cell; avoids attribute lookups in the hot loop
    return tuple(
        tuple(
            (a.read, tuple((SYMBOLS.index(s.write), _STEP[s.move], s.emit or "", s.next_state) for s in a.subs))
            for a in row
        )
        for row in spec.transitions
    )


class Evaluator:
    """Resumable machine evaluator used by the program-tree search.

    ``start`` runs until the machine first blocks; ``feed`` supplies the
    next input bit to a node blocked on input and runs until it blocks
    again.  Nodes expose ``output``, ``consumed`` and ``status`` and are
    never mutated after being returned, so siblings can share a parent.
    """

    tag = "machine"

    def start(self, fuel: int):
        raise NotImplementedError

    def feed(self, node, bit: str, fuel: int):
        raise NotImplementedError

    def run(self, program: str, fuel: int) -> RunResult:
        node = self.start(fuel)
        while node.status is Status.AWAITING_INPUT and node.consumed < len(program):
            node = self.feed(node, program[node.consumed], fuel)
        return RunResult(node.output, node.consumed, node.status)


class MachineEvaluator(Evaluator):
    def __init__(self, spec: MachineSpec, tag: str = "machine"):
        self.spec = spec
        self.tag = tag
        self._table = _compile(spec)

    def start(self, fuel: int) -> _Config:
        return self._advance(_Config(0, 0, {}, "", 0, 0), None, fuel)

    def feed(self, node: _Config, bit: str, fuel: int) -> _Config:
        if node.status is not Status.AWAITING_INPUT:
            raise ValueError("node is not waiting for input")
        conf = _Config(node.state, node.head, dict(node.tape), node.output, node.consumed, node.steps)
        return self._advance(conf, bit, fuel)

    def run(self, program: str, fuel: int) -> RunResult:
        return run(self.spec, program, fuel)

    def _advance(self, conf: _Config, bit, fuel):
        table = self._table
        state, head, tape = conf.state, conf.head, conf.tape
        out, consumed, steps = conf.output, conf.consumed, conf.steps
        while True:
            if state == HALT:
                status = Status.HALTED
                break
            if steps >= fuel:
                status = Status.FUEL_EXHAUSTED
                break
            read, subs = table[state][tape.get(head, BLANK)]
            if read:
                if bit is None:
                    status = Status.AWAITING_INPUT
                    break
                write, delta, emit, state = subs[bit == "1"]
                bit = None
                consumed += 1
            else:
                write, delta, emit, state = subs[0]
            tape[head] = write
            out += emit
            head += delta
            steps += 1
        conf.state, conf.head, conf.output = state, head, out
        conf.consumed, conf.steps, conf.status = consumed, steps, status
        return conf


def as_evaluator(machine) -> Evaluator:
    if isinstance(machine, Evaluator):
        return machine
    if isinstance(machine, MachineSpec):
        return MachineEvaluator(machine)
    raise TypeError(f"expected a MachineSpec or Evaluator, got {type(machine).__name__}")


# --- textual format -------------------------------------------------------


class MachineFormatError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


class MachineSyntaxError(MachineFormatError):
    pass


class NonTotalTable(MachineFormatError):
    def __init__(self, state: int, symbol: str):
        self.state = state
        self.symbol = symbol
        super().__init__(f"missing row for state {state}, symbol {symbol}")


class BadStateRef(MachineFormatError):
    pass


_SUB = r"\(\s*([01B])\s+([LRS])\s+([-01])\s+(\d+|H)\s*\)"
_ROW_RE = re.compile(
    r"^(\d+)\s+([01B])\s*->\s*(?:(read)\s*" + _SUB + r"\s*" + _SUB + r"|(noread)\s*" + _SUB + r")$"
)
_HEADER_RE = re.compile(r"^states\s+(\d+)$")


def parse_machine(text: str) -> MachineSpec:
    """Parse the textual table format into a :class:`MachineSpec`.

    Raises
    ------
    MachineSyntaxError
        Malformed header or row, or a duplicated cell.
    BadStateRef
        A row names a state outside ``[0, states)``.
    NonTotalTable
        Some ``(state, symbol)`` cell has no row.
    """
    num_states = None
    cells: dict[tuple[int, int], Action] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if num_states is None:
            m = _HEADER_RE.match(line)
            if not m or int(m.group(1)) < 1:
                raise MachineSyntaxError("expected 'states N' header with N >= 1", lineno)
            num_states = int(m.group(1))
            continue
        m = _ROW_RE.match(line)
        if not m:
            raise MachineSyntaxError(f"cannot parse row {line!r}", lineno)
        g = m.groups()
        state, sym = int(g[0]), SYMBOLS.index(g[1])
        if state >= num_states:
            raise BadStateRef(f"state {state} out of range (states={num_states})", lineno)
        if g[2]:
            subs = (_make_sub(g[3:7], num_states, lineno), _make_sub(g[7:11], num_states, lineno))
        else:
            subs = (_make_sub(g[12:16], num_states, lineno),)
        if (state, sym) in cells:
            raise MachineSyntaxError(f"duplicate row for state {state}, symbol {g[1]}", lineno)
        cells[state, sym] = Action(bool(g[2]), subs)
    if num_states is None:
        raise MachineSyntaxError("empty machine file", 1)
    for s in range(num_states):
        for k, sym in enumerate(SYMBOLS):
            if (s, k) not in cells:
                raise NonTotalTable(s, sym)
    rows = tuple(tuple(cells[s, k] for k in range(3)) for s in range(num_states))
    return MachineSpec(num_states, rows)


def _make_sub(fields, num_states, lineno) -> SubAction:
    write, move, emit, nxt = fields
    if nxt == "H":
        next_state = HALT
    else:
        next_state = int(nxt)
        if next_state >= num_states:
            raise BadStateRef(f"next state {next_state} out of range (states={num_states})", lineno)
    return SubAction(write, move, None if emit == "-" else emit, next_state)


def _format_sub(sub: SubAction) -> str:
    nxt = "H" if sub.next_state == HALT else str(sub.next_state)
    return f"({sub.write} {sub.move} {sub.emit or '-'} {nxt})"


def format_machine(spec: MachineSpec) -> str:
    lines = [f"states {spec.num_states}"]
    for s, row in enumerate(spec.transitions):
        for sym, action in zip(SYMBOLS, row):
            kind = "read " if action.read else "noread "
            lines.append(f"{s} {sym} -> {kind}{''.join(_format_sub(x) for x in action.subs)}")
    return "\n".join(lines) + "\n"
