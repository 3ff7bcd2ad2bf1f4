import random
from fractions import Fraction

import pytest

from caweave import ca9150
from caweave.errors import BudgetExceeded, MaxLcRequired
from caweave.gf2field import primitive_polynomials
from caweave.golden import load_grid
from caweave.interleave import analyze, build_from_spec, make_spec
from caweave.seqcore import ZERO, linear_complexity, minimal_period, pn_sequence

from conftest import PN5_SHIFTED


def det_charpoly(rules):
    """Characteristic polynomial by cofactor expansion of det(xI + A) over GF(2)[x]."""
    from caweave.gf2field import pmul

    M = len(rules)
    # matrix entries as polynomials: diagonal x + c_i, off-diagonals 1
    def entry(i, j):
        if i == j:
            return 0b10 ^ int(rules[i])
        return 1 if abs(i - j) == 1 else 0

    def det(rows, cols):
        if not rows:
            return 1
        r = rows[0]
        total = 0
        for idx, c in enumerate(cols):
            e = entry(r, c)
            if e:
                total ^= pmul(e, det(rows[1:], cols[:idx] + cols[idx + 1:]))
        return total

    return det(list(range(M)), list(range(M)))


class TestCharpoly:
    def test_degree3(self):
        assert ca9150.charpoly("001") == ca9150.charpoly("100") == 0b1101

    def test_against_determinant(self):
        rng = random.Random(0)
        for _ in range(40):
            s = "".join(rng.choice("01") for _ in range(rng.randint(1, 6)))
            assert ca9150.charpoly(s) == det_charpoly(s)


class TestSynthesizePn:
    @pytest.mark.parametrize(
        "poly,pair",
        [
            ("1+x^2+x^5", {"11110", "01111"}),
            ("1+x+x^2+x^4+x^5", {"10000", "00001"}),
            ("1+x^2+x^3", {"001", "100"}),
        ],
    )
    def test_examples(self, poly, pair):
        assert set(ca9150.synthesize_pn_ca(poly)) == pair

    def test_mirror_pairs_and_census(self):
        for L in range(2, 11):
            census = ca9150.charpoly_census(L)
            for p in primitive_polynomials(L):
                found = sorted(census[p.bits])
                assert len(found) == 2
                assert found[0] == found[1][::-1]
                assert tuple(found) == ca9150.synthesize_pn_ca(p)

    def test_budget(self):
        with pytest.raises(BudgetExceeded):
            ca9150.synthesize_pn_ca("1+x^2+x^5", max_l=4)


class TestMirrorExpand:
    def test_examples(self):
        assert ca9150.mirror_expand("01111", 1) == "0111001110"
        assert ca9150.mirror_expand("11110", 1) == "1111111111"
        assert ca9150.mirror_expand("01111", 0) == "01111"

    def test_length(self):
        assert len(ca9150.mirror_expand("001", 3)) == 24


class TestVerify:
    @pytest.mark.parametrize("rules,table", [("0111001110", "table7a"), ("1111111111", "table7b")])
    def test_long_example(self, rules, table, seq62):
        ok, grid = ca9150.verify_column0(rules, seq62)
        assert ok
        assert grid == load_grid(table).grid

    def test_pn_example(self):
        ok, grid = ca9150.verify_column0("001", minimal_period("1001110"))
        assert ok and grid == load_grid("table3a").grid

    def test_wrong_rules_fail(self, seq62):
        ok, _ = ca9150.verify_column0("0111001111", seq62)
        assert not ok
        ok, _ = ca9150.verify_column0("01111", seq62)
        assert not ok

    def test_mirror_duality(self):
        # the two degree-3 CAs are mirrors; each generates the PN-sequence in its own cell 0
        target = pn_sequence("1+x^2+x^3", "100")
        for rules in ("001", "100"):
            ok, grid = ca9150.verify_column0(rules, target)
            mirror_ok, _ = ca9150.verify_column0(rules[::-1], target)
            assert ok and mirror_ok
            assert str(minimal_period((grid.column_bits(0), grid.height))) == str(target)

    def test_expanded_pairs_generate_max_lc_specs(self):
        rng = random.Random(8)
        checked = 0
        while checked < 40:
            L = rng.choice((3, 4, 5, 6))
            p = rng.choice(primitive_polynomials(L))
            t = rng.choice((2, 4))
            spec = make_spec(p, [rng.randrange(p.period) for _ in range(t)])
            rep = analyze(spec)
            if not rep.is_max_lc:
                continue
            syn = ca9150.synthesize(spec)
            assert syn.verified == (True, True)
            assert all(len(r) == t * L for r in syn.pair)
            for g in syn.grids:
                col0 = minimal_period((g.column_bits(0), g.height))
                assert col0.period == rep.period
                assert linear_complexity(col0)[0] == rep.lc
            checked += 1

    def test_degenerate_rejected(self):
        with pytest.raises(MaxLcRequired):
            ca9150.synthesize(make_spec("1+x^2+x^3", (0, 4)))


class TestDecompose:
    def test_column3(self):
        grid = load_grid("table7b").grid
        base = pn_sequence("1+x^2+x^5", "11111")
        ledger = ca9150.decompose_columns(grid, 2, base)
        second = "1001111100011011101010000100101"
        assert ledger[3].parts == (17, 28)
        assert str(base.rotate(17)) == PN5_SHIFTED
        assert str(base.rotate(28)) == second

    def test_column0(self, seq62):
        grid = load_grid("table7a").grid
        base = pn_sequence("1+x^2+x^5", "11111")
        assert ca9150.decompose_columns(grid, 2, base)[0].parts == (0, 17)

    def test_pn_grid(self):
        grid = load_grid("table3a").grid
        base = minimal_period("1001110")
        ledger = ca9150.decompose_columns(grid, 1, base)
        assert all(e.parts[0] is not ZERO for e in ledger)


class TestBalance:
    def test_pn(self):
        assert ca9150.balance_stats(pn_sequence("1+x+x^3")) == (4, 3, Fraction(4, 7))

    def test_zero_interleaved(self):
        spec = make_spec("1+x^2+x^3", (0, 1), "111")
        from caweave.ca102 import derive_grid, decompose

        col1 = derive_grid(build_from_spec(spec), 2)[1]
        assert ZERO in decompose(col1, 2, spec.base())
        ones, zeros, ratio = ca9150.balance_stats(col1)
        assert (ones, zeros) == (4, 10)
        assert zeros >= ones + 7 - 1

    def test_zero(self):
        assert ca9150.balance_stats(minimal_period("0"))[2] == 0
