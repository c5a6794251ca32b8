import random
from itertools import product

import pytest
from hypothesis import given, strategies as st

from oracles import index_codewords, random_spec
from sololab.enumeration import (
    IncompleteCode,
    UniversalEvaluator,
    action_count,
    code_I,
    code_length,
    covering_count,
    decode_I,
    decode_machine,
    encode_machine,
    spec_count,
    universal_run,
)
from sololab.semimeasure import Budget, approx_lambda
from sololab.tm import EMITS, HALT, MOVES, SYMBOLS, Action, MachineSpec, RunResult, Status, SubAction, run


def test_counts():
    # 27 sub-actions per next-state choice; read pairs plus noread singles
    assert action_count(1) == 54 * 54 + 54
    assert spec_count(1) == action_count(1) ** 3


def test_round_trip_indices():
    for i in range(10_000):
        assert encode_machine(decode_machine(i)) == i


def test_round_trip_random_specs():
    rng = random.Random(7)
    for _ in range(500):
        spec = random_spec(rng)
        assert decode_machine(encode_machine(spec)) == spec


def test_round_trip_across_state_boundary():
    first_two_state = spec_count(1)
    assert decode_machine(first_two_state - 1).num_states == 1
    assert decode_machine(first_two_state).num_states == 2
    for i in (first_two_state - 1, first_two_state, first_two_state + 12345):
        assert encode_machine(decode_machine(i)) == i


def _serial_key(spec):
    # canonical serialization: per cell, read before noread; sub-action digits (next, move, write, emit)
    def sub_key(s):
        nxt = spec.num_states if s.next_state == HALT else s.next_state
        return (nxt, MOVES.index(s.move), SYMBOLS.index(s.write), EMITS.index(s.emit))

    return tuple((0 if a.read else 1,) + tuple(sub_key(s) for s in a.subs) for row in spec.transitions for a in row)


def test_index_zero_is_lexicographically_first_one_state_spec():
    subs = [SubAction(w, m, e, n) for w in SYMBOLS for m in MOVES for e in EMITS for n in (0, HALT)]
    actions = [Action(True, (a, b)) for a in subs for b in subs] + [Action(False, (a,)) for a in subs]
    first = min(actions, key=lambda a: _serial_key(MachineSpec(1, ((a, a, a),))))
    assert decode_machine(0) == MachineSpec(1, ((first, first, first),))


def test_order_follows_serialization():
    specs = [decode_machine(i) for i in range(0, 3000, 7)]
    keys = [_serial_key(s) for s in specs]
    assert keys == sorted(keys)


# --- index code -----------------------------------------------------------


def test_code_examples():
    assert code_I(0) == "0"
    assert code_I(3) == "11000"


def test_code_matches_shortlex_oracle():
    assert [code_I(i) for i in range(300)] == index_codewords(300)
    assert all(code_length(i) == len(code_I(i)) for i in range(300))


@given(st.integers(0, 10**9), st.text("01", max_size=12))
def test_decode_round_trip(i, rest):
    assert decode_I(code_I(i) + rest) == (i, rest)


def test_prefix_free():
    words = [code_I(i) for i in range(2000)]
    ws = sorted(words)
    assert all(not b.startswith(a) for a, b in zip(ws, ws[1:]))


@pytest.mark.parametrize("bits", ["", "1", "1111", "110", "1101"])
def test_incomplete(bits):
    with pytest.raises(IncompleteCode):
        decode_I(bits)


def test_every_string_is_a_codeword_prefix_or_extension():
    # the code is complete: no string of length 7 is dead
    for w in map("".join, product("01", repeat=7)):
        try:
            decode_I(w)
        except IncompleteCode:
            assert w.startswith("111")


def test_covering_count():
    for L in range(0, 14):
        assert covering_count(L) == sum(1 for i in range(5000) if code_length(i) <= L)


# --- universal dispatcher -------------------------------------------------


@pytest.mark.parametrize("j", [0, 1, 5, 44, 62])
@pytest.mark.parametrize("p", ["", "0", "1011", "111000111"])
def test_universal_run_is_adjunction(j, p):
    fuel = 40
    direct = run(decode_machine(j), p, fuel)
    via_u = universal_run(code_I(j) + p, fuel)
    assert via_u == RunResult(direct.output, direct.consumed + code_length(j), direct.status)


def test_universal_incomplete_code():
    for fuel in (0, 5, 100):
        assert universal_run("1111", fuel) == RunResult("", 4, Status.AWAITING_INPUT)


def test_universal_evaluator_agrees_with_universal_run():
    ev = UniversalEvaluator()
    rng = random.Random(3)
    for _ in range(300):
        p = "".join(rng.choice("01") for _ in range(rng.randint(0, 14)))
        assert ev.run(p, 30) == universal_run(p, 30)
        assert super(UniversalEvaluator, ev).run(p, 30) == universal_run(p, 30)


@pytest.mark.parametrize("budget", [Budget(0, 0), Budget(5, 3), Budget(11, 128)])
def test_lambda_u_root_is_one(budget):
    assert approx_lambda(UniversalEvaluator(), "", budget) == 1
