import itertools
import math

import pytest

from tlh.perm import identity
from tlh.recursion import (
    CacheError,
    InvariantViolation,
    MemoTable,
    RecState,
    evaluate,
    evaluate_q1,
    expand,
    leaf_q_powers,
    load_table,
    measure,
    rule_select,
    save_table,
    trace_evaluate,
)
from tlh.ring import A, LaurentPoly, ONE, Q, StructuredRational, T
from tlh.torus import TorusInput, shuffle_strings

ONE_PLUS_A = ONE + A


def sr(num, qpow, tpow):
    out = StructuredRational(num, qpow, tpow)
    # frozen oracles must already be in cancelled form
    assert out.num == num and out.qpow == qpow and out.tpow == tpow
    return out


class TestDispatch:
    def test_examples(self):
        assert rule_select(RecState((), "", "")) == "R1"
        assert rule_select(RecState((), "000", "")) == "R1"
        assert rule_select(RecState((), "", "0")) == "R1"
        assert rule_select(RecState((1,), "01", "01")) == "R2"
        assert rule_select(RecState((1, 2), "011", "011")) == "R3"
        assert rule_select(RecState((2, 1), "11", "11")) == "R4"
        assert rule_select(RecState((1,), "10", "01")) == "R5"
        assert rule_select(RecState((1,), "01", "10")) == "R6"
        assert rule_select(RecState((), "0", "00")) == "R7"
        assert rule_select(RecState((1,), "10", "100")) == "R8"

    def test_weight_mismatch(self):
        with pytest.raises(InvariantViolation):
            rule_select(RecState((1,), "10", "00"))
        with pytest.raises(InvariantViolation):
            rule_select(RecState((), "1", "1"))
        with pytest.raises(InvariantViolation):
            rule_select(RecState((1,), "12", "10"))

    def test_dispatch_total_on_valid_states(self):
        # every well-formed state up to length 7 selects exactly one rule
        for lv in range(0, 4):
            for lw in range(0, 4):
                for v in map("".join, itertools.product("01", repeat=lv)):
                    for w in map("".join, itertools.product("01", repeat=lw)):
                        if v.count("1") != w.count("1"):
                            continue
                        for sigma in itertools.permutations(
                            range(1, v.count("1") + 1)
                        ):
                            rule = rule_select(RecState(sigma, v, w))
                            assert rule in {f"R{i}" for i in range(1, 9)}

    def test_measure_decreases(self):
        checked = 0
        for v, w in ((("10", "100")), ("110", "1100"), ("0110", "0110")):
            stack = [RecState(identity(v.count("1")), v, w)]
            while stack:
                s = stack.pop()
                _, kids = expand(s)
                for kid in kids:
                    assert measure(kid) < measure(s)
                    checked += 1
                stack.extend(kids)
        assert checked > 30


class TestFrozenValues:
    def test_empty(self):
        assert evaluate(RecState((), "", "")) == sr(ONE, 0, 0)

    def test_all_zero_base(self):
        assert evaluate(RecState((), "00", "")) == sr(ONE_PLUS_A**2, 2, 2)

    def test_single_one(self):
        assert evaluate(RecState((1,), "1", "1")) == sr(ONE_PLUS_A, 1, 1)

    def test_trefoil_state(self):
        got = evaluate(RecState((1,), "10", "100"))
        assert got == sr(ONE_PLUS_A * (Q + A + T) * Q**-1, 1, 1)

    def test_hopf_state(self):
        got = evaluate(RecState((1,), "10", "10"))
        want = sr(ONE_PLUS_A * (Q * (ONE - T) + A + T) * Q**-1, 2, 2)
        assert got == want

    def test_t33_state(self):
        # expanded by hand through R8, R3, R2, R7, R1
        bracket = (
            Q**3 * (ONE - T) ** 2
            + Q**2 * (A + T) * (ONE - T) ** 2
            + Q * (A + T) * (ONE - T) * (ONE + 2 * T)
            + (A + T) * (A + T**2)
        )
        got = evaluate(RecState((1,), "100", "100"))
        assert got == sr(ONE_PLUS_A * bracket * Q**-3, 3, 3)

    def test_memo_reuse(self):
        memo = MemoTable()
        evaluate(RecState((1,), "10", "100"), memo)
        before = memo.misses
        evaluate(RecState((1,), "10", "100"), memo)
        assert memo.misses == before and memo.hits >= 1


class TestTrace:
    def test_leaf_powers_small(self):
        assert leaf_q_powers(trace_evaluate(RecState((), "", ""))) == [0]
        assert leaf_q_powers(trace_evaluate(RecState((1,), "1", "1"))) == [1]
        assert leaf_q_powers(trace_evaluate(RecState((1,), "10", "100"))) == [1, 1]

    def test_trace_value_matches_engine(self):
        for sigma, v, w in (
            ((1,), "10", "100"),
            ((1,), "100", "100"),
            ((1, 2), "110", "110"),
            ((2, 1), "0101", "1010"),
        ):
            s = RecState(sigma, v, w)
            assert trace_evaluate(s).value == evaluate(s)

    def test_leaf_powers_equal_color_on_knot_inputs(self):
        for m, n in ((2, 3), (3, 4), (2, 5)):
            for k in (1, 2):
                v, w = shuffle_strings(TorusInput(m, n, k))
                root = trace_evaluate(RecState(identity(k), v, w))
                powers = leaf_q_powers(root)
                assert set(powers) == {k}, (m, n, k, set(powers))


def enumerate_states(max_total):
    for lv in range(0, max_total + 1):
        for lw in range(0, max_total - lv + 1):
            for v in map("".join, itertools.product("01", repeat=lv)):
                kv = v.count("1")
                for w in map("".join, itertools.product("01", repeat=lw)):
                    if w.count("1") != kv:
                        continue
                    for sigma in itertools.permutations(range(1, kv + 1)):
                        yield RecState(sigma, v, w)


class TestMemoPurity:
    def test_exhaustive_small(self):
        # every state computed twice: shared table vs fresh unmemoized trace
        memo = MemoTable()
        count = 0
        for s in enumerate_states(8):
            assert evaluate(s, memo) == trace_evaluate(s).value, s
            count += 1
        assert count == 969


class TestEviction:
    def test_bounded_table_matches_full(self):
        v, w = shuffle_strings(TorusInput(3, 4, 2))
        s = RecState(identity(2), v, w)
        full, bounded = MemoTable(), MemoTable(evict_above=6)
        assert evaluate(s, full) == evaluate(s, bounded)
        assert bounded.evictions > 0
        assert len(bounded.entries) < len(full.entries)

    def test_default_table_never_evicts(self):
        memo = MemoTable()
        v, w = shuffle_strings(TorusInput(3, 4, 2))
        evaluate(RecState(identity(2), v, w), memo)
        assert memo.evict_above is None and memo.evictions == 0

    def test_evicted_state_recomputes_on_reuse(self):
        memo = MemoTable(evict_above=4)
        root = RecState((1,), "100", "100")
        evaluate(root, memo)
        _, kids = expand(root)
        assert all(k not in memo.entries for k in kids)
        before = memo.misses
        assert evaluate(kids[0], memo) == evaluate(kids[0], MemoTable())
        assert memo.misses > before


class TestQ1Engine:
    def test_base(self):
        assert evaluate_q1("", "") == ONE
        assert evaluate_q1("00", "") == ONE_PLUS_A**2

    def test_examples(self):
        assert evaluate_q1("10", "100") == ONE_PLUS_A**2 + T * ONE_PLUS_A
        assert (
            evaluate_q1("10", "10000")
            == ONE_PLUS_A**2 * (ONE + T) + T**2 * ONE_PLUS_A
        )

    def test_weight_mismatch(self):
        with pytest.raises(InvariantViolation):
            evaluate_q1("1", "0")

    def test_coefficients_nonnegative(self):
        for v, w in (("10", "100"), ("110", "1100"), ("100", "100")):
            poly = evaluate_q1(v, w)
            assert all(c > 0 for _, c in poly.terms())


class TestCache:
    def test_round_trip(self, tmp_path):
        memo = MemoTable()
        evaluate(RecState((1,), "10", "100"), memo)
        path = str(tmp_path / "t.cache")
        save_table(memo, path)
        loaded = load_table(path)
        assert loaded.entries == memo.entries

    def test_reload_is_byte_identical(self, tmp_path):
        memo = MemoTable()
        evaluate(RecState((1,), "100", "100"), memo)
        p1, p2 = str(tmp_path / "a"), str(tmp_path / "b")
        save_table(memo, p1)
        save_table(load_table(p1), p2)
        assert open(p1).read() == open(p2).read()

    def test_bad_header(self, tmp_path):
        path = tmp_path / "bad.cache"
        path.write_text("TLH-CACHE 999\n")
        with pytest.raises(CacheError):
            load_table(str(path))

    def test_corrupt_line(self, tmp_path):
        memo = MemoTable()
        evaluate(RecState((1,), "1", "1"), memo)
        path = tmp_path / "c.cache"
        save_table(memo, str(path))
        path.write_text(path.read_text() + "1|[1]|1|1|{not json}\n")
        with pytest.raises(CacheError):
            load_table(str(path))

    def test_warm_table_short_circuits(self, tmp_path):
        memo = MemoTable()
        s = RecState((1,), "10", "100")
        val = evaluate(s, memo)
        path = str(tmp_path / "t.cache")
        save_table(memo, path)
        warm = load_table(path)
        assert evaluate(s, warm) == val
        assert warm.misses == 0 and warm.hits == 1
