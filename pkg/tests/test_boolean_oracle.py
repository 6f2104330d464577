import itertools

import numpy as np
import pytest

from gpk.boolean_oracle import (
    Affine,
    Balanced,
    BitDrop,
    BooleanFunction,
    Constant,
    Neither,
    TruthTable,
    adversarial_balanced,
    classical_bv_solver,
    classical_dj_solver,
    classify_promise,
    format_truth_table,
    parse_truth_table,
    random_affine_instance,
    random_promise_instance,
)
from gpk.errors import LengthMismatch, NotAffine, TooLarge, TruthTableParseError
from gpk.f2_algebra import BitString, F2Matrix
from gpk.rng import SplitMix64

from brute import bit_dot, bits_of, invertible_by_det

B = BitString.parse


class TestSplitMix:
    def test_reference_outputs(self):
        # published SplitMix64 outputs for seed 1234567
        rng = SplitMix64(1234567)
        assert [rng.next_u64() for _ in range(3)] == [
            6457827717110365317,
            3203168211198807973,
            9817491932198370423,
        ]

    def test_block_matches_scalar_stream(self):
        a, b = SplitMix64(99), SplitMix64(99)
        block = a.block(100)
        assert [int(v) for v in block] == [b.next_u64() for _ in range(100)]
        assert a.next_u64() == b.next_u64()

    def test_below_in_range(self):
        rng = SplitMix64(4)
        draws = [rng.below(7) for _ in range(7000)]
        assert set(draws) == set(range(7))

    def test_permutation(self):
        perm = SplitMix64(5).permutation(64)
        assert sorted(perm.tolist()) == list(range(64))


class TestEvaluate:
    def test_bitdrop_worked_example(self):
        f = BooleanFunction.bit_drop(3, 0)
        assert f.evaluate(B("011")) == B("01")

    def test_constant_affine(self):
        c = B("101")
        f = BooleanFunction.affine(F2Matrix.zeros(3, 4), c)
        for x in range(16):
            assert f.evaluate(BitString(x, 4)) == c

    def test_identity_affine(self):
        f = BooleanFunction.affine(F2Matrix.identity(3), BitString.zero(3))
        assert f.evaluate(B("110")) == B("110")

    def test_length_mismatch(self):
        f = BooleanFunction.bit_drop(3, 1)
        with pytest.raises(LengthMismatch):
            f.evaluate(B("01"))

    def test_counter_counts_every_evaluate(self):
        f = random_affine_instance(5, 3, seed=2)
        calls = 0
        for x in range(32):
            f.evaluate(x)
            calls += 1
            assert f.classical_calls == calls
        f.table()
        assert f.classical_calls == calls
        classify_promise(f)
        assert f.classical_calls == calls
        assert f.simulator_evaluations == 32

    @pytest.mark.parametrize("n", range(2, 11))
    def test_representations_agree(self, n):
        for j in range(n):
            f = BooleanFunction.bit_drop(n, j)
            t = f.to_truth_table()
            for x in range(1 << n):
                bits = bits_of(x, n)
                expected = BitString.from_bits(bits[:j] + bits[j + 1 :])
                assert f.evaluate(x) == expected == t.evaluate(x)
        g = random_affine_instance(n, 3, seed=n)
        R, r0 = g.rep.R, g.rep.r0
        t = g.to_truth_table()
        for x in range(1 << n):
            bits = [r0[i] ^ bit_dot(R.row_data[i], x, n) for i in range(3)]
            assert g.evaluate(x) == t.evaluate(x) == BitString.from_bits(bits)

    def test_validation(self):
        with pytest.raises(LengthMismatch):
            BooleanFunction(2, 1, TruthTable((0, 1, 0)))
        with pytest.raises(LengthMismatch):
            BooleanFunction(2, 1, TruthTable((0, 1, 2, 0)))
        with pytest.raises(LengthMismatch):
            BooleanFunction(3, 1, BitDrop(0))
        with pytest.raises(LengthMismatch):
            BooleanFunction(3, 2, Affine(F2Matrix.identity(3), B("00")))
        with pytest.raises(TooLarge):
            BooleanFunction(27, 1, BitDrop(0))

    def test_shifted(self):
        f = random_promise_instance(4, 3, "balanced", seed=11)
        s = B("110")
        g = f.shifted(s)
        for x in range(16):
            assert g.evaluate(x) == f.evaluate(x) ^ s


class TestClassify:
    def test_constant(self):
        f = BooleanFunction.constant(3, B("10"))
        assert classify_promise(f) == Constant(B("10"))

    @pytest.mark.parametrize("m", range(1, 7))
    def test_all_constants(self, m):
        for c in range(1 << m):
            f = BooleanFunction.constant(2, BitString(c, m))
            assert classify_promise(f) == Constant(BitString(c, m))

    def test_single_bit_balanced(self):
        f = BooleanFunction.from_outputs(1, 1, [0, 1])
        assert classify_promise(f) == Balanced(B("0"), B("1"))

    def test_bitdrop_is_neither(self):
        f = BooleanFunction.bit_drop(3, 0)
        images = {f.evaluate(x).value for x in range(8)}
        assert len(images) == 4
        assert classify_promise(f) == Neither()

    def test_uneven_two_values_is_neither(self):
        f = BooleanFunction.from_outputs(2, 1, [0, 0, 0, 1])
        assert classify_promise(f) == Neither()

    def test_balanced_canonical_order(self):
        f = BooleanFunction.from_outputs(2, 2, ["11", "01", "11", "01"])
        assert classify_promise(f) == Balanced(B("01"), B("11"))
        with pytest.raises(ValueError):
            Balanced(B("11"), B("01"))

    def test_too_large(self):
        f = random_affine_instance(21, 1, seed=0)
        with pytest.raises(TooLarge):
            classify_promise(f)


class TestGenerators:
    def test_balanced_small(self):
        f = random_promise_instance(2, 1, "balanced", seed=7)
        outs = [f.evaluate(x).value for x in range(4)]
        assert sorted(outs) == [0, 0, 1, 1]

    def test_constant(self):
        f = random_promise_instance(4, 3, "constant", seed=1)
        assert len({f.evaluate(x) for x in range(16)}) == 1

    def test_round_trip(self):
        for seed in range(100):
            n, m = 1 + seed % 8, 1 + seed % 5
            f = random_promise_instance(n, m, "balanced", seed)
            assert isinstance(classify_promise(f), Balanced)
            g = random_promise_instance(n, m, "constant", seed)
            assert isinstance(classify_promise(g), Constant)

    def test_deterministic(self):
        a = random_promise_instance(6, 4, "balanced", seed=123)
        b = random_promise_instance(6, 4, "balanced", seed=123)
        assert a.rep == b.rep
        c = random_affine_instance(6, 4, seed=5)
        d = random_affine_instance(6, 4, seed=5)
        assert c.rep == d.rep

    def test_affine_offset(self):
        f = random_affine_instance(7, 5, seed=3)
        assert f.evaluate(0) == f.rep.r0

    def test_invertible_fraction_diagnostic(self):
        # exact fraction of invertible 4x4 matrices over F2, by enumeration
        invertible = sum(
            invertible_by_det([bits_of(r, 4) for r in rows])
            for rows in itertools.product(range(16), repeat=4)
        )
        assert invertible == 20160
        exact = invertible / 65536
        hits = sum(random_affine_instance(4, 4, seed=s).rep.R.rank() == 4 for s in range(10_000))
        # binomial standard error at 10^4 samples is ~0.0046
        assert abs(hits / 10_000 - exact) < 0.02

    def test_unknown_kind(self):
        with pytest.raises(ValueError):
            random_promise_instance(3, 1, "linear", seed=0)


class TestClassicalDJ:
    def test_constant_worst_case(self):
        f = BooleanFunction.constant(4, B("1"))
        assert classical_dj_solver(f) == Constant(B("1"))
        assert f.classical_calls == 9

    def test_immediate_disagreement(self):
        f = BooleanFunction.from_outputs(2, 1, [0, 1, 1, 0])
        assert classical_dj_solver(f) == Balanced(B("0"), B("1"))
        assert f.classical_calls == 2

    @pytest.mark.parametrize("n", range(1, 11))
    def test_adversarial(self, n):
        f = adversarial_balanced(n)
        assert isinstance(classify_promise(f), Balanced)
        assert classical_dj_solver(f) == Balanced(B("0"), B("1"))
        assert f.classical_calls == (1 << (n - 1)) + 1

    def test_multibit_values(self):
        f = random_promise_instance(5, 3, "balanced", seed=4)
        assert classical_dj_solver(f) == classify_promise(f)


class TestClassicalBV:
    def test_identity(self):
        f = BooleanFunction.affine(F2Matrix.identity(4), BitString.zero(4))
        R, r0 = classical_bv_solver(f)
        assert R == F2Matrix.identity(4) and r0.is_zero()
        assert f.classical_calls == 5

    def test_random(self):
        f = random_affine_instance(5, 3, seed=17)
        R, r0 = classical_bv_solver(f)
        assert (R, r0) == (f.rep.R, f.rep.r0)
        assert f.classical_calls == 6

    def test_constant(self):
        f = BooleanFunction.from_outputs(3, 2, ["10"] * 8)
        R, r0 = classical_bv_solver(f)
        assert R == F2Matrix.zeros(2, 3) and r0 == B("10")

    @pytest.mark.parametrize("n", range(1, 11))
    def test_reproduces_on_all_inputs(self, n):
        f = random_affine_instance(n, 4, seed=100 + n).to_truth_table()
        R, r0 = classical_bv_solver(f)
        g = BooleanFunction.affine(R, r0)
        for x in range(1 << n):
            assert g.evaluate(x) == f.evaluate(x)

    def test_not_affine(self):
        f = BooleanFunction.from_outputs(2, 1, [0, 0, 0, 1])
        with pytest.raises(NotAffine):
            classical_bv_solver(f)


class TestTruthTableFormat:
    def test_round_trip(self):
        f = random_promise_instance(4, 3, "balanced", seed=8)
        text = format_truth_table(f)
        lines = text.splitlines()
        assert lines[0] == "4 3" and len(lines) == 17
        assert lines[1 + 5] == str(f.evaluate(5))
        g = parse_truth_table(text)
        assert np.array_equal(g.table(), f.table())

    @pytest.mark.parametrize(
        "text,line,column",
        [
            ("", 1, 1),
            ("2\n", 1, 1),
            ("2 x\n0\n0\n0\n0\n", 1, 3),
            ("2 1\n0\n1\n0\n", 5, 1),
            ("2 1\n0\n1\n0\n1\n1\n", 6, 1),
            ("2 2\n00\n01\n0a\n11\n", 4, 2),
            ("2 2\n00\n01\n0\n11\n", 4, 2),
            ("2 2\n00\n01\n011\n11\n", 4, 3),
        ],
    )
    def test_positional_errors(self, text, line, column):
        with pytest.raises(TruthTableParseError) as info:
            parse_truth_table(text)
        assert (info.value.line, info.value.column) == (line, column)


def test_counters_are_thread_safe():
    from concurrent.futures import ThreadPoolExecutor

    f = random_affine_instance(8, 3, seed=1)
    with ThreadPoolExecutor(max_workers=8) as pool:
        list(pool.map(lambda k: [f.evaluate(x) for x in range(256)], range(16)))
    assert f.classical_calls == 16 * 256
