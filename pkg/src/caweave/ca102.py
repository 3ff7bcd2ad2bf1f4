"""Regular cyclic rule-102 CAs generating interleaving sequences.

Rule 102 reads ``x_i(t+1) = x_i(t) + x_(i+1)(t)``.  Rearranged on the
vertical sequences this gives ``c_(j+1)[r] = c_j[r] + c_j[r+1]``: column
j+1 is (1 + E) applied to column j, E being the left shift.  Every column is
therefore fixed by column 0, and a cyclic CA of width W exists exactly when
(1 + E)^W fixes column 0.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product
from math import gcd, lcm

from .engine import CYCLIC, CaGrid, RuleVector, run
from .errors import DecompositionFailed, InvariantBreach, UnsupportedT, ValidationError
from .gf2field import (
    PolyLike,
    PrimitivePolynomial,
    ZechTable,
    build_zech_table,
    factorize,
    is_irreducible,
    pdivmod,
    ppow,
    ppowmod,
    validate_primitive,
)
from .interleave import (
    InterleaveSpec,
    analyze,
    build_from_spec,
    deinterleave,
    is_power_of_two,
    make_spec,
    require_max_lc,
)
from .seqcore import (
    ZERO,
    PeriodicSequence,
    ShiftOrZero,
    advance,
    combined_shift,
    format_shift,
    linear_complexity,
    minimal_period,
    pn_sequence,
    rotate_int,
    shift_between,
)


@lru_cache(maxsize=64)
def _table(bits: int) -> ZechTable:
    return build_zech_table(bits)


def zech_d(p: PolyLike) -> int:
    """D = Z(1)."""
    return _table(validate_primitive(p).bits).D


# --- column derivation ------------------------------------------------------

def next_column(col: int, n: int) -> int:
    return col ^ rotate_int(col, n, 1)


def column_power(col: int, n: int, j: int) -> int:
    """(1 + E)^j applied to an n-periodic column, using (1+E)^(2^m) = 1 + E^(2^m)."""
    m = 0
    while j:
        if j & 1:
            col ^= rotate_int(col, n, (1 << m) % n)
        j >>= 1
        m += 1
    return col


def _derive_raw(x: int, n: int, count: int) -> list[int]:
    cols = [x]
    for _ in range(count - 1):
        cols.append(next_column(cols[-1], n))
    return cols


def derive_grid(target: PeriodicSequence, max_width: int) -> list[PeriodicSequence]:
    """Columns 0..max_width-1 of the rule-102 CA whose column 0 is ``target``."""
    if max_width < 1:
        raise ValidationError("max_width must be at least 1")
    n = target.period
    return [minimal_period((c, n)) for c in _derive_raw(target.bits, n, max_width)]


def derived_ca(target: PeriodicSequence, width: int) -> CaGrid:
    """The width-``width`` grid (one period tall) read off the derived columns."""
    n = target.period
    return CaGrid.from_columns(_derive_raw(target.bits, n, width), n)


def rule102(width: int) -> RuleVector:
    return RuleVector((102,) * width, CYCLIC)


# --- lengths ----------------------------------------------------------------

def predicted_length(p: PolyLike, t_exp: int) -> int:
    """2^t_exp * T / gcd(T, D)."""
    poly = validate_primitive(p)
    T = poly.period
    return (1 << t_exp) * T // gcd(T, zech_d(poly))


def pn_ca_length(p: PolyLike) -> int:
    """T / gcd(T, D): width of the cyclic 102-CA generating the PN-sequence itself."""
    poly = validate_primitive(p)
    return poly.period // gcd(poly.period, zech_d(poly))


def minimal_length(target: PeriodicSequence, cap: int | None = None) -> int | None:
    """Smallest j >= 1 with column j equal to column 0, or None if j > cap.

    The default cap is the target's period, which covers every interleaving
    of 2^t shifted copies of a PN-sequence.
    """
    if cap is None:
        cap = target.period
    if cap < 1:
        raise ValidationError("cap must be at least 1")
    n, x = target.period, target.bits
    c = x
    for j in range(1, cap + 1):
        c ^= rotate_int(c, n, 1)
        if c == x:
            return j
    return None


def closes_at(target: PeriodicSequence, width: int) -> bool:
    """True when column ``width`` equals column 0, i.e. minimal length divides width."""
    return column_power(target.bits, target.period, width) == target.bits


@lru_cache(maxsize=None)
def _universal_exponent(deg: int) -> tuple[int, tuple[int, ...]]:
    """A multiple of the order of every unit modulo any polynomial of degree <= deg.

    Returns the number and its distinct prime factors.
    """
    value = 1
    for d in range(1, deg + 1):
        value = lcm(value, (1 << d) - 1)
    value <<= (deg - 1).bit_length()
    primes: set[int] = {2}
    for d in range(1, deg + 1):
        primes.update(factorize((1 << d) - 1))
    return value, tuple(sorted(q for q in primes if value % q == 0))


def closure_order(target: PeriodicSequence, max_lc: int = 48) -> int | None:
    """Exact minimal length, by order reduction instead of column-by-column search.

    Returns None when no width works, which happens exactly when 1 + x
    divides the minimal polynomial of the target.
    """
    lc, m = linear_complexity(target)
    if lc == 0:
        return 1
    if m.bit_count() % 2 == 0:
        return None
    if lc > max_lc:
        raise ValidationError(f"linear complexity {lc} too large for order reduction")
    n, x = target.period, target.bits
    value, primes = _universal_exponent(lc)
    if column_power(x, n, value) != x:
        raise InvariantBreach("universal exponent failed to close the CA")
    for q in primes:
        while value % q == 0 and column_power(x, n, value // q) == x:
            value //= q
    return value


def length_certificate(p: PolyLike, t_exp: int) -> bool:
    """(1+x)^W = 1 mod p^(2^t_exp) with W the predicted length.

    Every 2^t_exp-interleaving of shifted copies is annihilated by
    p^(2^t_exp), so this single congruence proves closure at W for all shift
    tuples at once.
    """
    poly = validate_primitive(p)
    modulus = ppow(poly.bits, 1 << t_exp)
    return ppowmod(0b11, predicted_length(poly, t_exp), modulus) == 1


# --- ledgers ------------------------------------------------------------------

@dataclass(frozen=True)
class ColumnLedgerEntry:
    column_index: int
    parts: tuple[ShiftOrZero, ...]

    def csv_rows(self) -> list[tuple[int, int, str]]:
        return [(self.column_index, i, format_shift(k)) for i, k in enumerate(self.parts)]


def ledger_csv(ledger: list[ColumnLedgerEntry]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(("column_index", "part_index", "shift_or_ZERO"))
    for entry in ledger:
        w.writerows(entry.csv_rows())
    return buf.getvalue()


def decompose(col: PeriodicSequence, t: int, base: PeriodicSequence) -> tuple[ShiftOrZero, ...]:
    """Shifts of base (or ZERO) making up each of the t streams of ``col``."""
    parts: list[ShiftOrZero] = []
    for stream in deinterleave(col, t):
        if stream.is_zero():
            parts.append(ZERO)
            continue
        k = shift_between(base, stream) if stream.period == base.period else None
        if k is None:
            raise DecompositionFailed(f"stream {stream} is neither zero nor a shift of {base}")
        parts.append(k)
    return tuple(parts)


def observed_ledger(target: PeriodicSequence, t: int, base: PeriodicSequence, width: int) -> list[ColumnLedgerEntry]:
    """Decompose each of the first ``width`` derived columns into base shifts."""
    return [
        ColumnLedgerEntry(j, decompose(col, t, base))
        for j, col in enumerate(derive_grid(target, width))
    ]


def predicted_ledger(spec: InterleaveSpec, table: ZechTable, width: int) -> list[ColumnLedgerEntry]:
    """Closed-form shifts for 2-interleavings.

    Shifts are relative to the spec's base sequence.  With k = k_1 - k_0 and
    D = Z(1), the k = 0 and k = 1 cases follow explicit patterns; any other k
    follows the column recurrence (u, v) -> (u (+) v, v (+) (u + 1)), where
    (+) is the Zech-shift of a sum.
    """
    if spec.t != 2:
        raise UnsupportedT("closed-form ledgers exist only for t = 2")
    if table.poly != spec.poly:
        raise ValidationError("Zech table belongs to a different polynomial")
    T, D = spec.T, table.D
    k0, k1 = spec.shifts
    k = (k1 - k0) % T
    out = []
    if k in (0, 1):
        for j in range(width):
            r, odd = divmod(j, 2)
            if k == 0:
                parts = (ZERO, k0 + (r + 1) * D) if odd else (k0 + r * D, k0 + r * D)
            else:
                parts = (k0 + (r + 1) * D, ZERO) if odd else (k0 + r * D, k0 + r * D + 1)
            out.append(ColumnLedgerEntry(j, tuple(advance(x, 0, T) for x in parts)))
        return out
    u, v = k0, k1
    for j in range(width):
        out.append(ColumnLedgerEntry(j, (u, v)))
        u, v = combined_shift(table, u, v), combined_shift(table, v, advance(u, 1, T))
    return out


def column_family_shifts(target: PeriodicSequence, stride: int, count: int) -> list[int | None]:
    """Shift of column r*stride relative to column 0, for r = 1..count."""
    cols = derive_grid(target, stride * count + 1)
    return [shift_between(cols[0], cols[r * stride]) for r in range(1, count + 1)]


# --- synthesis ----------------------------------------------------------------

@dataclass
class Ca102Synthesis:
    spec: InterleaveSpec
    target: PeriodicSequence
    predicted_length: int
    minimal_length: int | None
    grid: CaGrid
    ledger: list[ColumnLedgerEntry]
    recurrence_shifts: list[int | None]
    predicted: list[ColumnLedgerEntry] | None = field(default=None)

    def to_json(self) -> dict:
        return {
            "family": "102",
            "spec": self.spec.to_json(),
            "sequence": str(self.target),
            "period": self.target.period,
            "predicted_length": self.predicted_length,
            "minimal_length": self.minimal_length,
            "recurrence_shifts": self.recurrence_shifts,
            "ledger": [[format_shift(k) for k in e.parts] for e in self.ledger],
        }


def synthesize(spec: InterleaveSpec, cap: int | None = None) -> Ca102Synthesis:
    """Build the rule-102 CA whose column 0 is the spec's interleaving."""
    t = spec.t
    if not is_power_of_two(t):
        raise UnsupportedT(f"the length formula needs a power-of-two t, got {t}")
    target = build_from_spec(spec)
    require_max_lc(analyze(spec, target))
    t_exp = t.bit_length() - 1
    width = predicted_length(spec.poly, t_exp)
    n = target.period
    cols = _derive_raw(target.bits, n, width + 1)
    if cols[width] != cols[0]:
        raise InvariantBreach(f"column {width} does not close back onto column 0")
    ml = minimal_length(target, cap if cap is not None else width)
    if ml is None or width % ml:
        raise InvariantBreach(f"minimal length {ml} does not divide {width}")
    grid = CaGrid.from_columns(cols[:width], n)
    if run(rule102(width), grid.rows[0], n - 1) != grid:
        raise InvariantBreach("forward evolution disagrees with the derived grid")
    base = spec.base()
    ledger = [ColumnLedgerEntry(j, decompose(minimal_period((c, n)), t, base)) for j, c in enumerate(cols[:width])]
    col0 = minimal_period((cols[0], n))
    shifts = [shift_between(col0, minimal_period((cols[r * t], n))) for r in range(1, width // t)]
    predicted = predicted_ledger(spec, _table(spec.poly.bits), width) if t == 2 else None
    return Ca102Synthesis(spec, target, width, ml, grid, ledger, shifts, predicted)


# --- exhaustive shift-tuple sweeps -------------------------------------------

def _spread(p: int, t: int) -> int:
    """p(x^t)."""
    out, i = 0, 0
    while p:
        if p & 1:
            out |= 1 << (i * t)
        p >>= 1
        i += 1
    return out


def _irreducible_factors(f: int) -> list[int]:
    """Distinct irreducible factors by trial division (small degrees only)."""
    out = []
    d = 2
    while f.bit_length() > 1:
        if d.bit_length() - 1 > (f.bit_length() - 1) // 2:
            out.append(f)
            break
        if is_irreducible(d):
            q, r = pdivmod(f, d)
            if r == 0:
                out.append(d)
                while r == 0:
                    f = q
                    q, r = pdivmod(f, d)
        d += 1
    return out


def _apply(poly: int, x: int, n: int) -> int:
    acc = 0
    for j in range(poly.bit_length()):
        if poly >> j & 1:
            acc ^= rotate_int(x, n, j)
    return acc


@dataclass
class SweepResult:
    poly: PrimitivePolynomial
    t: int
    bound: int
    tuples: int
    max_lc: int
    dividing: int
    first_violation: tuple[int, ...] | None

    @property
    def all_divide(self) -> bool:
        return self.dividing == self.max_lc

    def to_json(self) -> dict:
        return {
            "poly": str(self.poly),
            "t": self.t,
            "bound": self.bound,
            "tuples": self.tuples,
            "max_lc": self.max_lc,
            "dividing": self.dividing,
            "first_violation": list(self.first_violation) if self.first_violation else None,
        }


def shift_tuple_sweep(p: PolyLike, t: int, bound: int, seed: str | None = None) -> SweepResult:
    """Check every shift tuple (0, k_1, ..., k_(t-1)) of one PN-sequence.

    For each tuple the interleaving s is tested for maximum linear
    complexity (t*L) and for closure at ``bound`` (minimal length divides
    bound).  Tuples with k_0 != 0 are rotations of these and behave the same.
    Both tests are linear in s, so they are precomputed per (stream, shift)
    and each tuple costs a handful of XORs.
    """
    poly = validate_primitive(p)
    T, L = poly.period, poly.degree
    n = t * T
    base = pn_sequence(poly, seed)
    if t == 1:
        ok = closes_at(base, bound)
        return SweepResult(poly, 1, bound, 1, 1, int(ok), None if ok else (0,))
    text = base.cycle(2 * T)
    slot = [
        [sum(int(text[m + k]) << (m * t + j) for m in range(T)) for k in range(T)]
        for j in range(t)
    ]
    pt = _spread(poly.bits, t)
    cofactors = [pdivmod(pt, f)[0] for f in _irreducible_factors(pt)]
    G = [[[_apply(c, x, n) for x in row] for row in slot] for c in cofactors]
    H = [[column_power(x, n, bound) ^ x for x in row] for row in slot]

    max_lc = dividing = 0
    first = None
    nf = len(cofactors)
    head_g = [G[f][0][0] for f in range(nf)]
    head_h = H[0][0]
    last_g = [G[f][t - 1] for f in range(nf)]
    last_h = H[t - 1]
    mids = list(range(1, t - 1))
    for ks in product(range(T), repeat=len(mids)):
        acc_g = list(head_g)
        acc_h = head_h
        for j, k in zip(mids, ks):
            for f in range(nf):
                acc_g[f] ^= G[f][j][k]
            acc_h ^= H[j][k]
        for k in range(T):
            if all(acc_g[f] ^ last_g[f][k] for f in range(nf)):
                max_lc += 1
                if acc_h == last_h[k]:
                    dividing += 1
                elif first is None:
                    first = (0,) + ks + (k,)
    return SweepResult(poly, t, bound, T ** (t - 1), max_lc, dividing, first)


def tuple_sequence(p: PolyLike, shifts: tuple[int, ...], seed: str | None = None) -> PeriodicSequence:
    """Interleaving of base.rotate(k) for k in shifts (helper for sweeps)."""
    return build_from_spec(make_spec(p, shifts, seed))


__all__ = [
    "Ca102Synthesis",
    "ColumnLedgerEntry",
    "SweepResult",
    "closes_at",
    "closure_order",
    "column_family_shifts",
    "column_power",
    "decompose",
    "derive_grid",
    "derived_ca",
    "ledger_csv",
    "length_certificate",
    "minimal_length",
    "next_column",
    "observed_ledger",
    "pn_ca_length",
    "predicted_ledger",
    "predicted_length",
    "rule102",
    "shift_tuple_sweep",
    "synthesize",
    "tuple_sequence",
    "zech_d",
]
