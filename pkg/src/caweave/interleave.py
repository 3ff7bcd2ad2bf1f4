"""Interleaving sequences built from shifted copies of a PN-sequence."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from math import lcm
from typing import Sequence

from .errors import MaxLcRequired, NotDivisible, PeriodMismatch, ValidationError
from .gf2field import PolyLike, PrimitivePolynomial, format_poly, pmod, ppow, validate_primitive
from .seqcore import (
    BitsLike,
    PeriodicSequence,
    linear_complexity,
    minimal_period,
    parse_bits,
    pn_sequence,
)


def is_power_of_two(n: int) -> bool:
    return n > 0 and n & (n - 1) == 0


@dataclass(frozen=True)
class InterleaveSpec:
    """Base polynomial, LFSR seed and the ordered stream shifts."""

    poly: PrimitivePolynomial
    seed: str
    shifts: tuple[int, ...]

    def __post_init__(self):
        if not self.shifts:
            raise ValidationError("at least one shift is required")
        if len(self.seed) != self.poly.degree or set(self.seed) - {"0", "1"}:
            raise ValidationError(f"seed must be {self.poly.degree} bits")
        if "1" not in self.seed:
            raise ValidationError("seed must be nonzero")
        T = self.poly.period
        if any(not 0 <= k < T for k in self.shifts):
            raise ValidationError(f"shifts must lie in [0, {T})")

    @property
    def t(self) -> int:
        return len(self.shifts)

    @property
    def L(self) -> int:
        return self.poly.degree

    @property
    def T(self) -> int:
        return self.poly.period

    def base(self) -> PeriodicSequence:
        return pn_sequence(self.poly, self.seed)

    def canonical(self) -> "InterleaveSpec":
        """Same sequence with k_0 = 0: shifts drop by k_0, the seed advances by k_0."""
        k0 = self.shifts[0]
        if k0 == 0:
            return self
        seed = self.base().cycle(k0 + self.L)[k0:]
        return InterleaveSpec(self.poly, seed, tuple((k - k0) % self.T for k in self.shifts))

    def to_json(self) -> dict:
        return {"poly": str(self.poly), "seed": self.seed, "shifts": list(self.shifts)}

    def dumps(self) -> str:
        return json.dumps(self.to_json())


def make_spec(poly: PolyLike, shifts: Sequence[int], seed: BitsLike | None = None) -> InterleaveSpec:
    """Build a spec; shifts are reduced mod T and the default seed is 10...0."""
    p = validate_primitive(poly)
    if seed is None:
        seed = "1" + "0" * (p.degree - 1)
    elif not isinstance(seed, str):
        packed, n = parse_bits(seed)
        seed = format(packed, f"0{n}b")[::-1]
    seed = "".join(seed.split())
    return InterleaveSpec(p, seed, tuple(int(k) % p.period for k in shifts))


def spec_from_json(obj: dict | str) -> InterleaveSpec:
    if isinstance(obj, str):
        obj = json.loads(obj)
    try:
        return make_spec(obj["poly"], obj["shifts"], obj.get("seed"))
    except KeyError as exc:
        raise ValidationError(f"spec is missing field {exc.args[0]!r}") from None


def interleave(streams: Sequence[PeriodicSequence], *, common_period: int | None = None) -> PeriodicSequence:
    """Round-robin merge: s_(n*t + j) = streams[j][n].

    All streams must share one period, unless ``common_period`` is given, in
    which case every stream period must divide it (e.g. the zero stream,
    whose minimal period is 1).
    """
    if not streams:
        raise ValidationError("need at least one stream")
    if common_period is None:
        periods = {s.period for s in streams}
        if len(periods) != 1:
            raise PeriodMismatch(f"stream periods differ: {sorted(periods)}")
        n = periods.pop()
    else:
        n = common_period
        bad = [s.period for s in streams if n % s.period]
        if bad:
            raise PeriodMismatch(f"periods {bad} do not divide {n}")
    texts = [s.cycle(n) for s in streams]
    merged = "".join("".join(col) for col in zip(*texts))
    return minimal_period(merged)


def deinterleave(s: PeriodicSequence, t: int, *, cycle: int | None = None) -> list[PeriodicSequence]:
    """Split s into its t component streams.

    Extraction runs over ``cycle`` terms, by default lcm(period, t), which is
    the shortest cycle that splits evenly.
    """
    if t < 1:
        raise ValidationError("t must be positive")
    if cycle is None:
        cycle = lcm(s.period, t)
    if cycle % t or cycle % s.period:
        raise NotDivisible(f"cycle {cycle} must be a multiple of t={t} and of the period {s.period}")
    text = s.cycle(cycle)
    return [minimal_period(text[j::t]) for j in range(t)]


def build_from_spec(spec: InterleaveSpec) -> PeriodicSequence:
    base = spec.base()
    return interleave([base.rotate(k) for k in spec.shifts])


@dataclass(frozen=True)
class InterleaveReport:
    period: int
    lc: int
    minimal_polynomial: int
    is_max_lc: bool
    annihilated_by_p_pow: bool
    t: int
    L: int
    theorem_applies: bool = field(default=True)

    def to_json(self) -> dict:
        return {
            "period": self.period,
            "lc": self.lc,
            "minimal_polynomial": format_poly(self.minimal_polynomial),
            "is_max_lc": self.is_max_lc,
            "annihilated_by_p_pow": self.annihilated_by_p_pow,
            "t": self.t,
            "L": self.L,
            "theorem_applies": self.theorem_applies,
        }


def analyze(spec: InterleaveSpec, seq: PeriodicSequence | None = None) -> InterleaveReport:
    """Period, linear complexity and minimal polynomial of the interleaving.

    ``annihilated_by_p_pow`` tests whether the minimal polynomial divides
    p(x)^t.  The divisibility guarantee only holds when t is a power of two;
    ``theorem_applies`` flags that case.
    """
    if seq is None:
        seq = build_from_spec(spec)
    lc, m = linear_complexity(seq)
    p_pow = ppow(spec.poly.bits, spec.t)
    return InterleaveReport(
        period=seq.period,
        lc=lc,
        minimal_polynomial=m,
        is_max_lc=lc == spec.t * spec.L,
        annihilated_by_p_pow=pmod(p_pow, m) == 0,
        t=spec.t,
        L=spec.L,
        theorem_applies=is_power_of_two(spec.t),
    )


def require_max_lc(report: InterleaveReport) -> InterleaveReport:
    if not report.is_max_lc:
        raise MaxLcRequired(
            f"linear complexity {report.lc} is below the maximum {report.t * report.L}"
        )
    return report


def describe_minpoly(m: int, poly: PrimitivePolynomial) -> str:
    """Write m as a power of poly when it is one, e.g. ``(1+x^2+x^3)^2``."""
    e, acc = 0, 1
    while acc.bit_length() < m.bit_length():
        acc = ppow(poly.bits, e + 1)
        e += 1
    if acc == m and e >= 1:
        return str(poly) if e == 1 else f"({poly})^{e}"
    return format_poly(m)


__all__ = [
    "InterleaveReport",
    "InterleaveSpec",
    "analyze",
    "build_from_spec",
    "deinterleave",
    "describe_minpoly",
    "interleave",
    "is_power_of_two",
    "make_spec",
    "require_max_lc",
    "spec_from_json",
]
