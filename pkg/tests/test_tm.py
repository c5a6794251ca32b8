import random

import pytest
from hypothesis import given, settings, strategies as st

from oracles import random_spec
from sololab.enumeration import decode_machine
from sololab.tm import (
    BadStateRef,
    MachineEvaluator,
    MachineSyntaxError,
    NonTotalTable,
    RunResult,
    Status,
    format_machine,
    parse_machine,
    run,
)

from conftest import COPIER, EMITTER0, SLOW_COPIER


def test_emitter_runs_out_of_fuel(emitter0):
    assert run(emitter0, "", 5) == RunResult("00000", 0, Status.FUEL_EXHAUSTED)


def test_copier_waits_for_input(copier):
    assert run(copier, "101", 100) == RunResult("101", 3, Status.AWAITING_INPUT)


def test_slow_copier(slow_copier):
    assert run(slow_copier, "101", 100) == RunResult("101", 3, Status.AWAITING_INPUT)
    assert run(slow_copier, "101", 4) == RunResult("10", 2, Status.FUEL_EXHAUSTED)


@pytest.mark.parametrize("i", [0, 7, 44, 12345, 10**12])
def test_zero_fuel(i):
    assert run(decode_machine(i), "0110", 0) == RunResult("", 0, Status.FUEL_EXHAUSTED)


def test_halting(echo_once):
    assert run(echo_once, "1", 10) == RunResult("1", 1, Status.HALTED)
    assert run(echo_once, "1000", 10) == RunResult("1", 1, Status.HALTED)
    assert run(echo_once, "", 10) == RunResult("", 0, Status.AWAITING_INPUT)


def test_negative_fuel_rejected(copier):
    with pytest.raises(ValueError):
        run(copier, "", -1)


def test_left_excursion_past_origin():
    # walks left for ever writing 1s, emitting a 1 on every step
    spec = parse_machine("states 1\n0 0 -> noread (1 L 1 0)\n0 1 -> noread (1 L 1 0)\n0 B -> noread (1 L 1 0)\n")
    assert run(spec, "", 50).output == "1" * 50


# --- properties -----------------------------------------------------------

specs = st.builds(lambda seed: random_spec(random.Random(seed)), st.integers(0, 2**32))
bits = st.text("01", max_size=10)


@settings(max_examples=200, deadline=None)
@given(specs, bits, bits, st.integers(0, 60), st.integers(0, 60))
def test_monotone_in_input_and_fuel(spec, p, q, t1, t2):
    t, t_ = min(t1, t2), max(t1, t2)
    small = run(spec, p, t)
    big = run(spec, p + q, t_)
    assert big.output.startswith(small.output)
    assert small.consumed <= len(p)


@settings(max_examples=100, deadline=None)
@given(specs, bits, st.integers(0, 60))
def test_deterministic(spec, p, t):
    assert run(spec, p, t) == run(spec, p, t)


@settings(max_examples=200, deadline=None)
@given(specs, bits, bits, st.integers(0, 60))
def test_halted_runs_ignore_extra_input(spec, p, q, t):
    r = run(spec, p, t)
    if r.status is Status.HALTED:
        assert run(spec, p + q, t) == r


@settings(max_examples=200, deadline=None)
@given(specs, bits, st.integers(0, 60))
def test_resumable_evaluator_agrees_with_run(spec, p, t):
    ev = MachineEvaluator(spec)
    node = ev.start(t)
    while node.status is Status.AWAITING_INPUT and node.consumed < len(p):
        node = ev.feed(node, p[node.consumed], t)
    assert RunResult(node.output, node.consumed, node.status) == run(spec, p, t)


def test_feed_does_not_mutate_parent(copier):
    ev = MachineEvaluator(copier)
    root = ev.start(10)
    a = ev.feed(root, "0", 10)
    b = ev.feed(root, "1", 10)
    assert (root.output, a.output, b.output) == ("", "0", "1")


# --- text format ----------------------------------------------------------


@pytest.mark.parametrize("text", [COPIER, SLOW_COPIER, EMITTER0])
def test_format_round_trip(text):
    spec = parse_machine(text)
    assert parse_machine(format_machine(spec)) == spec


def test_two_state_copier_parses():
    assert parse_machine(SLOW_COPIER).num_states == 2


def test_missing_row():
    text = "\n".join(line for line in SLOW_COPIER.splitlines() if not line.startswith("1 B"))
    with pytest.raises(NonTotalTable) as err:
        parse_machine(text)
    assert (err.value.state, err.value.symbol) == (1, "B")


def test_bad_next_state_reports_line():
    text = SLOW_COPIER.replace("1 B -> noread (B S - 0)", "1 B -> noread (B S - 7)")
    with pytest.raises(BadStateRef) as err:
        parse_machine(text)
    assert err.value.line == 7


def test_bad_row_state_reports_line():
    with pytest.raises(BadStateRef) as err:
        parse_machine("states 1\n3 0 -> noread (0 S - 0)\n")
    assert err.value.line == 2


@pytest.mark.parametrize(
    "text, line",
    [
        ("", 1),
        ("state 2\n", 1),
        ("states 1\n0 0 -> jump (0 S - 0)\n", 2),
        ("states 1\n0 0 -> read (0 S - 0)\n", 2),
        ("states 1\n# header ok\n\n0 0 -> noread (0 S - 0)\n0 0 -> noread (0 S - 0)\n", 5),
    ],
)
def test_syntax_errors(text, line):
    with pytest.raises(MachineSyntaxError) as err:
        parse_machine(text)
    assert err.value.line == line
