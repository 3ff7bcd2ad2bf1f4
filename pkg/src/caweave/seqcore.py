"""Periodic binary sequences, LFSRs, Berlekamp-Massey and shift algebra.

A :class:`PeriodicSequence` stores exactly one minimal period packed into an
int, bit ``i`` being ``s_i``.  Shifts follow the usual convention: the
sequence "starting at position k" is ``{s_{i+k}}``, i.e. ``rotate(k)``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from math import lcm
from typing import Iterable, Sequence, Union

from .errors import EmptyInput, ValidationError, ZeroState
from .gf2field import (
    INF,
    Infinity,
    PolyLike,
    PrimitivePolynomial,
    ZechTable,
    factorize,
    reciprocal,
    validate_primitive,
    zech,
)

# The all-zero sequence is alpha^inf = 0, so its "shift" is the same marker
# as Z(0).
ZERO = INF
ShiftOrZero = Union[int, Infinity]

BitsLike = Union[str, Sequence[int]]


def _repunit(count: int, width: int) -> int:
    """``count`` copies of a 1 spaced ``width`` apart (count * width bits)."""
    return ((1 << (count * width)) - 1) // ((1 << width) - 1)


def _is_period(bits: int, n: int, d: int) -> bool:
    return bits == (bits & ((1 << d) - 1)) * _repunit(n // d, d)


def _smallest_period(bits: int, n: int) -> int:
    best = n
    for q in factorize(n) if n > 1 else ():
        while best % q == 0 and _is_period(bits, n, best // q):
            best //= q
    return best


def parse_bits(text: BitsLike) -> tuple[int, int]:
    """Return (packed int, length) from a '0'/'1' string or 0/1 sequence."""
    if isinstance(text, str):
        s = "".join(text.split())
        if set(s) - {"0", "1"}:
            raise ValidationError(f"bit string may only contain 0 and 1: {text!r}")
        return (int(s[::-1], 2) if s else 0), len(s)
    bits = list(text)
    if any(b not in (0, 1) for b in bits):
        raise ValidationError("bits must be 0 or 1")
    return sum(b << i for i, b in enumerate(bits)), len(bits)


def rotate_int(bits: int, n: int, k: int) -> int:
    """Rotate an n-bit packed period so that the result starts at position k."""
    k %= n
    if k == 0:
        return bits
    return (bits >> k) | ((bits << (n - k)) & ((1 << n) - 1))


@dataclass(frozen=True)
class PeriodicSequence:
    """One minimal period of a binary sequence."""

    bits: int
    period: int

    def __post_init__(self):
        if self.period < 1:
            raise EmptyInput("period must be at least 1")
        if self.bits < 0 or self.bits >> self.period:
            raise ValidationError("bits do not fit in the declared period")
        if _smallest_period(self.bits, self.period) != self.period:
            raise ValidationError("declared period is not minimal; use minimal_period()")

    @classmethod
    def from_str(cls, text: BitsLike) -> "PeriodicSequence":
        return minimal_period(text)

    def __str__(self) -> str:
        return format(self.bits, f"0{self.period}b")[::-1]

    def __len__(self) -> int:
        return self.period

    def __getitem__(self, i: int) -> int:
        return self.bits >> (i % self.period) & 1

    def __iter__(self):
        return (self.bits >> i & 1 for i in range(self.period))

    def cycle(self, n: int) -> str:
        """The first n terms as a '0'/'1' string (n may exceed the period)."""
        s = str(self)
        reps = -(-n // self.period)
        return (s * reps)[:n]

    def rotate(self, k: int) -> "PeriodicSequence":
        """The sequence {s_(i+k)}."""
        return PeriodicSequence(rotate_int(self.bits, self.period, k), self.period)

    def is_zero(self) -> bool:
        return self.bits == 0

    def weight(self) -> int:
        return self.bits.bit_count()

    def __xor__(self, other: "PeriodicSequence") -> "PeriodicSequence":
        if not isinstance(other, PeriodicSequence):
            return NotImplemented
        n = lcm(self.period, other.period)
        return minimal_period((_expand(self, n) ^ _expand(other, n), n))

    def to_json(self) -> dict:
        return {"period": self.period, "bits": str(self)}

    def dumps(self) -> str:
        return json.dumps(self.to_json())


def _expand(seq: PeriodicSequence, n: int) -> int:
    """Pack n terms (n a multiple of the period) into an int."""
    return seq.bits * _repunit(n // seq.period, seq.period)


def minimal_period(bits: Union[BitsLike, tuple[int, int]]) -> PeriodicSequence:
    """Normalise a whole number of periods to one minimal period.

    ``bits`` is a '0'/'1' string, a 0/1 sequence or a ``(packed, length)``
    pair.
    """
    if isinstance(bits, tuple):
        packed, n = bits
    else:
        packed, n = parse_bits(bits)
    if n == 0:
        raise EmptyInput("cannot take the period of an empty sequence")
    d = _smallest_period(packed, n)
    return PeriodicSequence(packed & ((1 << d) - 1), d)


@dataclass(frozen=True)
class Lfsr:
    """Fibonacci LFSR: a_(i+L) = sum_j p_j a_(i+j)."""

    poly: PrimitivePolynomial
    state: tuple[int, ...]

    def __post_init__(self):
        if len(self.state) != self.poly.degree:
            raise ValidationError(
                f"state has {len(self.state)} bits, polynomial degree is {self.poly.degree}"
            )


def make_lfsr(poly: PolyLike, state: BitsLike) -> Lfsr:
    p = validate_primitive(poly)
    packed, n = parse_bits(state)
    return Lfsr(p, tuple(packed >> i & 1 for i in range(n)))


def lfsr_generate(lfsr: Lfsr, n: int, *, require_nonzero: bool = True) -> str:
    """First n terms of the LFSR output as a '0'/'1' string."""
    if n < 0:
        raise ValidationError("n must be non-negative")
    if require_nonzero and not any(lfsr.state):
        raise ZeroState("PN generation needs a nonzero initial state")
    L = lfsr.poly.degree
    taps = lfsr.poly.bits & ((1 << L) - 1)
    window = sum(b << i for i, b in enumerate(lfsr.state))
    out = []
    for _ in range(n):
        out.append(window & 1)
        fb = (window & taps).bit_count() & 1
        window = (window >> 1) | (fb << (L - 1))
    return "".join(map(str, out))


def pn_sequence(poly: PolyLike, seed: BitsLike | None = None) -> PeriodicSequence:
    """One period of the PN-sequence of ``poly``; default seed is 10...0."""
    p = validate_primitive(poly)
    if seed is None:
        seed = "1" + "0" * (p.degree - 1)
    text = lfsr_generate(make_lfsr(p, seed), p.period)
    return PeriodicSequence(int(text[::-1], 2), p.period)


def berlekamp_massey(bits: Iterable[int]) -> tuple[int, int]:
    """Return (L, C) with C the connection polynomial, C(0) = 1."""
    C, B = 1, 1
    L, m = 0, 1
    window = 0
    for n, b in enumerate(bits):
        # window holds s_n, s_(n-1), ... at bits 0, 1, ...
        window = (window << 1) | b
        if (C & window).bit_count() & 1:
            prev = C
            C ^= B << m
            if 2 * L <= n:
                L, B, m = n + 1 - L, prev, 1
            else:
                m += 1
        else:
            m += 1
    return L, C


def linear_complexity(seq: PeriodicSequence) -> tuple[int, int]:
    """(LC, minimal polynomial) of a periodic sequence.

    Runs Berlekamp-Massey over two full periods.  The minimal polynomial is
    returned in the same orientation as the generating polynomials of this
    package: degree LC and ``sum_j m_j s_(i+j) = 0`` for all i.
    """
    twice = list(seq) * 2
    lc, conn = berlekamp_massey(twice)
    if lc == 0:
        return 0, 1
    return lc, reciprocal(conn, lc + 1)


def apply_poly(poly: int, seq: PeriodicSequence) -> PeriodicSequence:
    """The sequence {sum_j c_j s_(i+j)}, i.e. poly(E) applied to seq."""
    acc = 0
    for j in range(poly.bit_length()):
        if poly >> j & 1:
            acc ^= rotate_int(seq.bits, seq.period, j)
    return minimal_period((acc, seq.period))


def annihilates(poly: int, seq: PeriodicSequence) -> bool:
    return apply_poly(poly, seq).is_zero()


def shift_between(a: PeriodicSequence, b: PeriodicSequence) -> int | None:
    """Smallest k with b_i = a_(i+k) for all i, or None if b is not a shift of a."""
    if a.period != b.period or a.weight() != b.weight():
        return None
    pos = (str(a) * 2).find(str(b))
    if pos < 0 or pos >= a.period:
        return None
    return pos


def sum_shift(table: ZechTable, k: int) -> ShiftOrZero:
    """Shift of {a_i + a_(i+k)} relative to {a_i}: Z(k), or ZERO when k = 0."""
    return zech(table, k)


def combined_shift(table: ZechTable, k1: ShiftOrZero, k2: ShiftOrZero) -> ShiftOrZero:
    """Shift of {a_(i+k1) + a_(i+k2)}.

    ZERO operands behave as the all-zero sequence: ZERO + k = k.
    """
    if k1 is ZERO:
        return k2
    if k2 is ZERO:
        return k1
    T = table.period
    k1 %= T
    k2 %= T
    if k1 == k2:
        return ZERO
    return (zech(table, k2 - k1) + k1) % T


def advance(k: ShiftOrZero, by: int, modulus: int) -> ShiftOrZero:
    """k + by (mod modulus), leaving ZERO fixed."""
    return ZERO if k is ZERO else (k + by) % modulus


def format_shift(k: ShiftOrZero) -> str:
    return "ZERO" if k is ZERO else str(k)


__all__ = [
    "Lfsr",
    "PeriodicSequence",
    "ShiftOrZero",
    "ZERO",
    "advance",
    "annihilates",
    "apply_poly",
    "berlekamp_massey",
    "combined_shift",
    "format_shift",
    "lfsr_generate",
    "linear_complexity",
    "make_lfsr",
    "minimal_period",
    "parse_bits",
    "pn_sequence",
    "rotate_int",
    "shift_between",
    "sum_shift",
]
