import itertools
import json

import pytest
from hypothesis import given, settings, strategies as st

from caweave.errors import MaxLcRequired, NotDivisible, PeriodMismatch, ValidationError
from caweave.gf2field import pmod, ppow, primitive_polynomials
from caweave.interleave import (
    analyze,
    build_from_spec,
    deinterleave,
    describe_minpoly,
    interleave,
    make_spec,
    require_max_lc,
    spec_from_json,
)
from caweave.seqcore import linear_complexity, minimal_period, pn_sequence

from conftest import PN4, PN5, PN5_SHIFTED, SEQ14, SEQ28, SEQ30, SEQ62


def manual_interleave(streams):
    """Direct transcription of s_(n*t + j) = stream_j[n] on strings."""
    n = len(streams[0])
    return "".join(streams[j][i] for i in range(n) for j in range(len(streams)))


class TestInterleave:
    def test_two_degree4_streams(self):
        a = minimal_period(PN4)
        b = minimal_period("010110010001111")
        assert str(interleave([a, b])) == SEQ30

    def test_four_degree3_streams(self):
        base = pn_sequence("1+x^2+x^3", "100")
        assert str(base) == "1001110"
        streams = [base.rotate(k) for k in (0, 5, 4, 1)]
        assert str(interleave(streams)) == SEQ28

    def test_stream_with_itself(self):
        s = minimal_period("1110010")
        out = interleave([s, s])
        assert out.period == 14
        assert str(out) == "11111100001100"

    def test_period_collapse_is_computed(self):
        s = minimal_period("10")
        # 1 1 0 0 repeats with period 4; (10, 01) gives 1001 with period 4 too,
        # while (1, 1) collapses to period 1
        assert interleave([minimal_period("1"), minimal_period("1")]).period == 1
        assert str(interleave([s, s])) == "1100"

    def test_period_mismatch(self):
        with pytest.raises(PeriodMismatch):
            interleave([minimal_period("1110010"), minimal_period("10")])

    def test_common_period(self):
        zero = minimal_period("0")
        s = minimal_period("1110010")
        assert str(interleave([zero, s], common_period=7)) == "01010100000100"
        with pytest.raises(PeriodMismatch):
            interleave([minimal_period("10"), s], common_period=7)

    def test_matches_manual(self):
        base = pn_sequence("1+x^3+x^4")
        streams = [base.rotate(k) for k in (0, 3, 9)]
        assert str(interleave(streams)) == str(minimal_period(manual_interleave([str(x) for x in streams])))


class TestDeinterleave:
    def test_degree4(self):
        a, b = deinterleave(minimal_period(SEQ30), 2)
        assert (str(a), str(b)) == (PN4, "010110010001111")

    def test_t1(self):
        s = minimal_period(SEQ30)
        assert deinterleave(s, 1) == [s]

    def test_degree5(self):
        a, b = deinterleave(minimal_period(SEQ62), 2)
        assert (str(a), str(b)) == (PN5, PN5_SHIFTED)

    def test_not_divisible(self):
        with pytest.raises(NotDivisible):
            deinterleave(minimal_period(SEQ30), 4, cycle=30)

    @settings(max_examples=40)
    @given(st.sampled_from([3, 4, 5]), st.integers(1, 4), st.data())
    def test_round_trip(self, L, t, data):
        p = primitive_polynomials(L)[0]
        base = pn_sequence(p)
        shifts = [data.draw(st.integers(0, p.period - 1)) for _ in range(t)]
        streams = [base.rotate(k) for k in shifts]
        assert deinterleave(interleave(streams), t) == streams


class TestSpec:
    def test_degree3_pair(self):
        spec = make_spec("1+x^2+x^3", (0, 1), "111")
        assert str(spec.base()) == "1110100"
        assert str(build_from_spec(spec)) == SEQ14

    def test_degree3_quad(self):
        assert str(build_from_spec(make_spec("1+x^2+x^3", (0, 5, 4, 1), "100"))) == SEQ28

    def test_single_stream_is_pn(self):
        spec = make_spec("1+x^2+x^5", (0,), "11111")
        assert str(build_from_spec(spec)) == PN5

    def test_canonical_preserves_sequence(self):
        spec = make_spec("1+x^3+x^4", (5, 2, 11), "1011")
        canon = spec.canonical()
        assert canon.shifts[0] == 0
        assert canon.shifts == (0, 12, 6)
        assert build_from_spec(canon) == build_from_spec(spec)

    def test_json_round_trip(self):
        spec = make_spec("1+x^2+x^3", (0, 1), "111")
        assert spec_from_json(spec.dumps()) == spec
        assert spec_from_json({"poly": "1011", "seed": "111", "shifts": [0, 8]}) == spec

    def test_bad_seed(self):
        with pytest.raises(ValidationError):
            make_spec("1+x^2+x^3", (0, 1), "000")
        with pytest.raises(ValidationError):
            make_spec("1+x^2+x^3", (0, 1), "11")

    def test_missing_field(self):
        with pytest.raises(ValidationError):
            spec_from_json({"seed": "111"})

    def test_equal_shifts_give_equal_streams(self):
        spec = make_spec("1+x^3+x^4", (6, 6, 6, 6), "1000")
        streams = deinterleave(build_from_spec(spec), 4)
        assert len(set(streams)) == 1


class TestAnalyze:
    def test_degree5_example(self):
        spec = make_spec("1+x^2+x^5", (0, 17), "11111")
        rep = analyze(spec)
        assert (rep.period, rep.lc, rep.is_max_lc) == (62, 10, True)
        assert rep.annihilated_by_p_pow

    def test_degree3_example(self):
        rep = analyze(make_spec("1+x^2+x^3", (0, 1), "111"))
        assert rep.lc == 6
        assert rep.minimal_polynomial == ppow(0b1101, 2)
        assert describe_minpoly(rep.minimal_polynomial, make_spec("1+x^2+x^3", (0,)).poly) == "(1+x^2+x^3)^2"

    def test_self_interleave_measured(self):
        # a PN-sequence interleaved with itself: oracle says full LC 2L and period 2T
        for p in primitive_polynomials(3) + primitive_polynomials(4):
            spec = make_spec(p, (0, 0))
            seq = build_from_spec(spec)
            rep = analyze(spec)
            assert (rep.lc, rep.period) == (linear_complexity(seq)[0], seq.period)
            assert (rep.lc, rep.period, rep.is_max_lc) == (2 * p.degree, 2 * p.period, True)

    def test_half_shift_degenerates(self):
        # shift (T+1)/2 turns the pair into a plain PN-sequence of the same polynomial
        for p in primitive_polynomials(3) + primitive_polynomials(4):
            T = p.period
            rep = analyze(make_spec(p, (0, (T + 1) // 2)))
            assert (rep.lc, rep.period, rep.is_max_lc) == (p.degree, T, False)
            with pytest.raises(MaxLcRequired):
                require_max_lc(rep)

    def test_non_power_of_two_flagged(self):
        rep = analyze(make_spec("1+x^2+x^3", (0, 1, 3)))
        assert not rep.theorem_applies
        assert rep.lc <= 3 * 3

    @pytest.mark.parametrize("L", [3, 4, 5, 6])
    def test_power_of_two_bounds_all_pairs(self, L):
        for p in primitive_polynomials(L)[:2]:
            base = pn_sequence(p)
            sq = ppow(p.bits, 2)
            for k in range(p.period):
                seq = interleave([base, base.rotate(k)])
                lc, m = linear_complexity(seq)
                assert pmod(sq, m) == 0
                assert lc <= 2 * L
                assert (2 * p.period) % seq.period == 0

    def test_quad_bounds(self):
        p = primitive_polynomials(3)[0]
        base = pn_sequence(p)
        p4 = ppow(p.bits, 4)
        for ks in itertools.product(range(7), repeat=3):
            seq = interleave([base] + [base.rotate(k) for k in ks])
            lc, m = linear_complexity(seq)
            assert pmod(p4, m) == 0 and lc <= 12 and 28 % seq.period == 0

    def test_report_json(self):
        rep = analyze(make_spec("1+x^2+x^3", (0, 1), "111"))
        assert json.loads(json.dumps(rep.to_json()))["lc"] == 6
