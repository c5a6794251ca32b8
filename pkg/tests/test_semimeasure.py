import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from oracles import naive_lambda, naive_machine_lambda, random_spec
from sololab.dyadic import Dyadic, ONE, ZERO
from sololab.enumeration import UniversalEvaluator, decode_machine
from sololab.semimeasure import (
    ApproxTable,
    Budget,
    approx_lambda,
    check_semimeasure,
    minimal_programs,
    strings_upto,
    tabulate,
)


def test_emitter_programs(emitter0):
    assert minimal_programs(emitter0, "00", Budget(3, 10)) == {""}


def test_copier_programs_match_brute_force(copier):
    budget = Budget(2, 4)
    brute = naive_machine_lambda(copier, ["10"], budget.max_len, budget.fuel)
    assert brute["10"][1] == {"10"}
    assert minimal_programs(copier, "10", budget) == {"10"}


def test_copier_too_short(copier):
    assert minimal_programs(copier, "10", Budget(1, 100)) == set()


@pytest.mark.parametrize("x", ["", "0", "1", "01", "110", "0101"])
def test_copier_lambda(slow_copier, x):
    budget = Budget(len(x), 2 * len(x))
    assert approx_lambda(slow_copier, x, budget) == Dyadic.pow2(len(x))
    assert naive_machine_lambda(slow_copier, [x], budget.max_len, budget.fuel)[x][0] == Fraction(1, 2 ** len(x))


def test_emitter_never_emits_one(emitter0):
    assert approx_lambda(emitter0, "1", Budget(6, 30)) == ZERO


@pytest.mark.parametrize("i", [0, 5, 44, 987654321])
def test_root_is_one(i):
    assert approx_lambda(decode_machine(i), "", Budget(0, 0)) == ONE
    assert tabulate(decode_machine(i), 0, Budget(3, 3)).values == {"": ONE}


def test_tabulate_emitter(emitter0):
    t = tabulate(emitter0, 2, Budget(3, 10))
    expected = {"": 1, "0": 1, "1": 0, "00": 1, "01": 0, "10": 0, "11": 0}
    assert {x: v.to_fraction() for x, v in t.items()} == expected


def test_tabulate_copier(copier):
    t = tabulate(copier, 1, Budget(4, 8))
    assert {x: v.to_fraction() for x, v in t.items()} == {"": 1, "0": Fraction(1, 2), "1": Fraction(1, 2)}


def _table(values):
    return ApproxTable("hand", None, 1, {x: Dyadic.from_fraction(v) for x, v in values.items()})


def test_check_semimeasure_hand_tables(copier):
    assert check_semimeasure(_table({"": 1, "0": Fraction(3, 4), "1": Fraction(1, 2)})) == [""]
    assert check_semimeasure(_table({"": 1, "0": Fraction(1, 2), "1": Fraction(1, 2)})) == []
    assert check_semimeasure(tabulate(copier, 3, Budget(5, 20))) == []


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32), st.integers(0, 7), st.integers(0, 40))
def test_tabulate_agrees_with_per_string_search(seed, L, t):
    spec = random_spec(random.Random(seed))
    budget = Budget(L, t)
    table = tabulate(spec, 3, budget)
    for x in strings_upto(3):
        assert table[x] == approx_lambda(spec, x, budget)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32), st.integers(0, 8), st.integers(0, 30))
def test_search_equals_naive_enumeration(seed, L, t):
    spec = random_spec(random.Random(seed))
    xs = list(strings_upto(2))
    brute = naive_machine_lambda(spec, xs, L, t)
    for x in xs:
        progs = minimal_programs(spec, x, Budget(L, t))
        assert progs == brute[x][1]
        assert approx_lambda(spec, x, Budget(L, t)).to_fraction() == brute[x][0]


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32), st.integers(0, 7), st.integers(0, 40), st.integers(0, 3), st.integers(0, 30))
def test_monotone_in_budget(seed, L, t, dL, dt):
    spec = random_spec(random.Random(seed))
    small = tabulate(spec, 3, Budget(L, t))
    big = tabulate(spec, 3, Budget(L + dL, t + dt))
    assert all(small[x] <= big[x] for x in small)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32), st.integers(0, 8), st.integers(0, 40), st.text("01", max_size=4))
def test_minimal_programs_prefix_free_and_kraft(seed, L, t, x):
    spec = random_spec(random.Random(seed))
    progs = sorted(minimal_programs(spec, x, Budget(L, t)))
    assert all(not b.startswith(a) for a, b in zip(progs, progs[1:]))
    assert sum(Fraction(1, 2 ** len(p)) for p in progs) <= 1


def test_universal_search_equals_naive():
    ev = UniversalEvaluator()
    xs = list(strings_upto(2))
    brute = naive_lambda(ev.run, xs, 7, 12)
    for x in xs:
        assert approx_lambda(ev, x, Budget(7, 12)).to_fraction() == brute[x][0]


def test_table_serialization_round_trip(copier):
    t = tabulate(copier, 2, Budget(4, 8))
    assert ApproxTable.from_json(t.to_json()) == t
    lines = t.to_csv().splitlines()
    assert lines[0] == "x,value_mantissa,value_exponent"
    assert lines[1] == ",1,0"
    assert lines[2] == "0,1,1"
