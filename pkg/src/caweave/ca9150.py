"""Hybrid null-boundary 150/90 CAs.

Rule strings use 1 for rule 150 and 0 for rule 90, cell 0 first.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .ca102 import ColumnLedgerEntry, decompose
from .engine import NULL, CaGrid, RuleVector, run
from .errors import BudgetExceeded, NotFound, UnsupportedT, ValidationError
from .gf2field import PolyLike, PrimitivePolynomial, validate_primitive
from .interleave import InterleaveSpec, analyze, build_from_spec, is_power_of_two, require_max_lc
from .seqcore import PeriodicSequence, minimal_period, rotate_int

DEFAULT_BUDGET_L = 20


def check_rule_string(s: str) -> str:
    s = "".join(s.split())
    if not s or set(s) - {"0", "1"}:
        raise ValidationError(f"rule string must be a nonempty 0/1 string: {s!r}")
    return s


def to_rule_vector(s: str) -> RuleVector:
    return RuleVector(tuple(150 if ch == "1" else 90 for ch in check_rule_string(s)), NULL)


def charpoly(rules: str) -> int:
    """Characteristic polynomial of the tridiagonal transition matrix.

    Delta_k = (x + c_k) Delta_(k-1) + Delta_(k-2), Delta_0 = 1, Delta_(-1) = 0.
    """
    prev, cur = 0, 1
    for ch in check_rule_string(rules):
        nxt = (cur << 1) ^ prev
        if ch == "1":
            nxt ^= cur
        prev, cur = cur, nxt
    return cur


def synthesize_pn_ca(p: PolyLike, *, max_l: int = DEFAULT_BUDGET_L) -> tuple[str, str]:
    """The two rule strings of length L with characteristic polynomial p.

    Exhaustive breadth-first search: level k holds (Delta_(k-1), Delta_k) for
    every length-k prefix, with the prefix bits encoded in the list index.
    """
    poly = validate_primitive(p)
    L = poly.degree
    if L > max_l:
        raise BudgetExceeded(f"degree {L} exceeds the search budget {max_l}")
    prev, cur = [0], [1]
    for _ in range(L):
        base = [(c << 1) ^ q for q, c in zip(prev, cur)]
        prev = [c for c in cur for _ in (0, 1)]
        cur = [x for b, c in zip(base, cur) for x in (b, b ^ c)]
    found = [format(i, f"0{L}b") for i, c in enumerate(cur) if c == poly.bits]
    found.sort()
    if len(found) != 2:
        raise NotFound(f"expected two 150/90 CAs for {poly}, found {found}")
    return found[0], found[1]


def charpoly_census(L: int) -> dict[int, list[str]]:
    """Characteristic polynomial -> every length-L rule string producing it."""
    out: dict[int, list[str]] = {}
    for v in range(1 << L):
        s = format(v, f"0{L}b")
        out.setdefault(charpoly(s), []).append(s)
    return out


def mirror_expand(s: str, t_exp: int) -> str:
    """Complement the last bit, then append the reversed string; repeat t_exp times."""
    s = check_rule_string(s)
    if t_exp < 0:
        raise ValidationError("t_exp must be non-negative")
    for _ in range(t_exp):
        s = s[:-1] + ("0" if s[-1] == "1" else "1")
        s = s + s[::-1]
    return s


def derive_columns(rules: str, target: PeriodicSequence) -> tuple[list[int], int]:
    """Columns 0..M-1 forced by column 0, plus the would-be column M.

    The null-boundary CA generates ``target`` in cell 0 exactly when the
    extra column M is all zero.
    """
    rules = check_rule_string(rules)
    n = target.period
    prev, cur = 0, target.bits
    cols = []
    for ch in rules:
        cols.append(cur)
        nxt = rotate_int(cur, n, 1) ^ prev
        if ch == "1":
            nxt ^= cur
        prev, cur = cur, nxt
    return cols, cur


def verify_column0(rules: str, target: PeriodicSequence) -> tuple[bool, CaGrid]:
    """Check that the null 150/90 CA ``rules`` can produce ``target`` in cell 0.

    Columns are derived left to right from column 0; the check passes when
    the right edge satisfies its null-boundary update and a forward run from
    row 0 reproduces the derived grid.
    """
    cols, overflow = derive_columns(rules, target)
    n = target.period
    grid = CaGrid.from_columns(cols, n)
    if overflow != 0:
        return False, grid
    forward = run(to_rule_vector(rules), grid.rows[0], n - 1)
    return forward == grid, grid


def decompose_columns(grid: CaGrid, t: int, base: PeriodicSequence) -> list[ColumnLedgerEntry]:
    """Split every column into t streams and match each to a base shift or zero."""
    n = grid.height
    return [
        ColumnLedgerEntry(j, decompose(minimal_period((c, n)), t, base))
        for j, c in enumerate(grid.columns_bits())
    ]


def balance_stats(seq: PeriodicSequence) -> tuple[int, int, Fraction]:
    """(ones, zeros, ones / period) over one period."""
    ones = seq.weight()
    return ones, seq.period - ones, Fraction(ones, seq.period)


@dataclass
class Ca9150Synthesis:
    poly: PrimitivePolynomial
    t_exp: int
    spec: InterleaveSpec
    target: PeriodicSequence
    base_pair: tuple[str, str]
    pair: tuple[str, str]
    verified: tuple[bool, bool]
    grids: tuple[CaGrid, CaGrid]

    def to_json(self) -> dict:
        return {
            "family": "90150",
            "poly": str(self.poly),
            "t": 1 << self.t_exp,
            "spec": self.spec.to_json(),
            "sequence": str(self.target),
            "period": self.target.period,
            "base_rules": list(self.base_pair),
            "rules": list(self.pair),
            "verified": list(self.verified),
            "lengths": [len(r) for r in self.pair],
        }


def synthesize(spec: InterleaveSpec) -> Ca9150Synthesis:
    t = spec.t
    if not is_power_of_two(t):
        raise UnsupportedT(f"150/90 synthesis needs a power-of-two t, got {t}")
    target = build_from_spec(spec)
    require_max_lc(analyze(spec, target))
    t_exp = t.bit_length() - 1
    base_pair = synthesize_pn_ca(spec.poly)
    pair = tuple(mirror_expand(s, t_exp) for s in base_pair)
    checks = [verify_column0(r, target) for r in pair]
    return Ca9150Synthesis(
        spec.poly,
        t_exp,
        spec,
        target,
        base_pair,
        pair,
        tuple(ok for ok, _ in checks),
        tuple(g for _, g in checks),
    )


__all__ = [
    "Ca9150Synthesis",
    "balance_stats",
    "charpoly",
    "charpoly_census",
    "check_rule_string",
    "decompose_columns",
    "derive_columns",
    "mirror_expand",
    "synthesize",
    "synthesize_pn_ca",
    "to_rule_vector",
    "verify_column0",
]
