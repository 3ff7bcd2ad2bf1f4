"""Binary polynomials, GF(2^L) arithmetic and Zech logarithms.

Polynomials over GF(2) are plain ints: bit ``i`` holds the coefficient of
``x**i``, so ``0b1011`` is ``1 + x + x^3``.  Field elements of GF(2^L) use the
same encoding, reduced modulo the defining polynomial (polynomial basis).
"""

from __future__ import annotations

import enum
import os
import re
from array import array
from dataclasses import dataclass, field
from typing import Iterable, Union

from .errors import DegreeOutOfRange, NotMonic, ReducibleOrNonPrimitive, ValidationError

DEFAULT_MAX_L = 24


class Infinity(enum.Enum):
    """Zech logarithm of 0, i.e. the exponent of the zero field element."""

    INF = "inf"

    def __str__(self) -> str:
        return "inf"

    def __repr__(self) -> str:
        return "INF"


INF = Infinity.INF

PolyLike = Union[int, str, Iterable[int], "PrimitivePolynomial"]


def max_degree() -> int:
    """Degree cap for table-building operations (env ``CAWEAVE_MAX_L``)."""
    raw = os.environ.get("CAWEAVE_MAX_L")
    if not raw:
        return DEFAULT_MAX_L
    try:
        value = int(raw)
    except ValueError:
        raise ValidationError(f"CAWEAVE_MAX_L must be an integer, got {raw!r}") from None
    if value < 2:
        raise ValidationError("CAWEAVE_MAX_L must be at least 2")
    return value


# --- plain polynomial arithmetic -------------------------------------------

def degree(p: int) -> int:
    return p.bit_length() - 1


def pmul(a: int, b: int) -> int:
    """Carry-less product."""
    if a.bit_length() < b.bit_length():
        a, b = b, a
    r = 0
    while b:
        if b & 1:
            r ^= a
        a <<= 1
        b >>= 1
    return r


def pdivmod(a: int, b: int) -> tuple[int, int]:
    if b == 0:
        raise ZeroDivisionError("polynomial division by zero")
    q = 0
    db = b.bit_length()
    while a.bit_length() >= db:
        s = a.bit_length() - db
        q |= 1 << s
        a ^= b << s
    return q, a


def pmod(a: int, b: int) -> int:
    db = b.bit_length()
    while a.bit_length() >= db:
        a ^= b << (a.bit_length() - db)
    return a


def pgcd(a: int, b: int) -> int:
    while b:
        a, b = b, pmod(a, b)
    return a


def ppow(a: int, e: int) -> int:
    r = 1
    while e:
        if e & 1:
            r = pmul(r, a)
        a = pmul(a, a)
        e >>= 1
    return r


def pmulmod(a: int, b: int, m: int) -> int:
    return pmod(pmul(a, b), m)


def ppowmod(a: int, e: int, m: int) -> int:
    r = 1
    a = pmod(a, m)
    while e:
        if e & 1:
            r = pmulmod(r, a, m)
        a = pmulmod(a, a, m)
        e >>= 1
    return pmod(r, m)


def reciprocal(p: int, width: int | None = None) -> int:
    """Reverse the coefficient order over ``width`` coefficients."""
    if width is None:
        width = p.bit_length()
    return int(format(p, f"0{width}b")[::-1], 2) if width else 0


# --- text formats -----------------------------------------------------------

_TERM = re.compile(r"^(?:1|x(?:\^(\d+))?)$")


def parse_poly(value: PolyLike) -> int:
    """Parse a polynomial from any accepted representation.

    Accepts an int, an ascending coefficient string such as ``"1101"``,
    a human form such as ``"1+x+x^3"``, a sequence of 0/1 coefficients
    (ascending) or an existing :class:`PrimitivePolynomial`.
    """
    if isinstance(value, PrimitivePolynomial):
        return value.bits
    if isinstance(value, bool):
        raise ValidationError("polynomial cannot be a bool")
    if isinstance(value, int):
        if value < 0:
            raise ValidationError("polynomial int must be non-negative")
        return value
    if isinstance(value, str):
        text = value.replace(" ", "").replace("*", "")
        if not text:
            raise ValidationError("empty polynomial")
        if set(text) <= {"0", "1"}:
            if text[-1] != "1" and len(text) > 1:
                raise NotMonic(f"leading coefficient of {value!r} is 0")
            return int(text[::-1], 2)
        result = 0
        for term in text.split("+"):
            m = _TERM.match(term)
            if not m:
                raise ValidationError(f"cannot parse polynomial term {term!r} in {value!r}")
            if term == "1":
                e = 0
            else:
                e = int(m.group(1)) if m.group(1) else 1
            result ^= 1 << e
        return result
    coeffs = list(value)
    if not coeffs:
        raise ValidationError("empty coefficient vector")
    if any(c not in (0, 1) for c in coeffs):
        raise ValidationError("coefficients must be 0 or 1")
    if coeffs[-1] != 1:
        raise NotMonic("leading coefficient is 0")
    return sum(c << i for i, c in enumerate(coeffs))


def format_poly(p: int) -> str:
    """Human form, ascending: ``0b1011`` -> ``"1+x+x^3"``."""
    if p == 0:
        return "0"
    terms = []
    for e in range(p.bit_length()):
        if p >> e & 1:
            terms.append("1" if e == 0 else "x" if e == 1 else f"x^{e}")
    return "+".join(terms)


def poly_bitstring(p: int) -> str:
    """Ascending coefficient string: ``0b1011`` -> ``"1101"``."""
    return format(p, "b")[::-1] if p else "0"


# --- primality helpers --------------------------------------------------------

def factorize(n: int) -> dict[int, int]:
    """Prime factorisation by trial division (fine for n < 2**48 or so)."""
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def is_irreducible(p: int) -> bool:
    """Rabin's test."""
    L = degree(p)
    if L < 1:
        return False
    if L == 1:
        return True
    if not p & 1:
        return False
    x = 0b10
    if ppowmod(x, 1 << L, p) != pmod(x, p):
        return False
    for q in factorize(L):
        h = ppowmod(x, 1 << (L // q), p) ^ x
        if pgcd(p, pmod(h, p)) != 1:
            return False
    return True


def order_of_x(p: int) -> int:
    """Multiplicative order of x modulo an irreducible p (p != x)."""
    L = degree(p)
    n = (1 << L) - 1
    for q in factorize(n):
        while n % q == 0 and ppowmod(0b10, n // q, p) == 1:
            n //= q
    return n


@dataclass(frozen=True)
class PrimitivePolynomial:
    """A validated primitive polynomial; construct with :func:`validate_primitive`."""

    bits: int

    @property
    def degree(self) -> int:
        return degree(self.bits)

    @property
    def period(self) -> int:
        return (1 << self.degree) - 1

    @property
    def coefficients(self) -> tuple[int, ...]:
        """(p_0, ..., p_L)."""
        return tuple(self.bits >> i & 1 for i in range(self.degree + 1))

    def __str__(self) -> str:
        return format_poly(self.bits)


def validate_primitive(coefficients: PolyLike, *, max_l: int | None = None) -> PrimitivePolynomial:
    if isinstance(coefficients, PrimitivePolynomial):
        return coefficients
    p = parse_poly(coefficients)
    if p == 0:
        raise NotMonic("zero polynomial")
    L = degree(p)
    if L < 2:
        raise DegreeOutOfRange(f"degree must be at least 2, got {L}")
    cap = max_degree() if max_l is None else max_l
    if L > cap:
        raise DegreeOutOfRange(f"degree {L} exceeds cap {cap} (set CAWEAVE_MAX_L to raise it)")
    if not p & 1:
        raise ReducibleOrNonPrimitive(p, "reducible", f"{format_poly(p)} is divisible by x")
    if not is_irreducible(p):
        raise ReducibleOrNonPrimitive(p, "reducible", format_poly(p))
    order = order_of_x(p)
    if order != (1 << L) - 1:
        raise ReducibleOrNonPrimitive(
            p, "imprimitive", f"{format_poly(p)} is irreducible but x has order {order}"
        )
    return PrimitivePolynomial(p)


def primitive_polynomials(L: int) -> list[PrimitivePolynomial]:
    """All primitive polynomials of degree L, ascending by integer value."""
    out = []
    for p in range((1 << L) | 1, 1 << (L + 1), 2):
        if is_irreducible(p) and order_of_x(p) == (1 << L) - 1:
            out.append(PrimitivePolynomial(p))
    return out


# --- field arithmetic -------------------------------------------------------

def field_add(a: int, b: int) -> int:
    return a ^ b


def field_mul(poly: PrimitivePolynomial, a: int, b: int) -> int:
    return pmulmod(a, b, poly.bits)


def field_pow(poly: PrimitivePolynomial, a: int, e: int) -> int:
    if a == 0:
        return 1 if e == 0 else 0
    return ppowmod(a, e % poly.period, poly.bits)


@dataclass(frozen=True, eq=False)
class ZechTable:
    """Discrete log and Zech log tables for the primitive element alpha = x.

    ``exp[e] = alpha^e`` for e in [0, T); ``log[v]`` is defined for v != 0.
    """

    poly: PrimitivePolynomial
    exp: array = field(repr=False)
    log: array = field(repr=False)
    _zech: array = field(repr=False)

    @property
    def period(self) -> int:
        return self.poly.period

    def __len__(self) -> int:
        return self.poly.period

    def __getitem__(self, t: int) -> int | Infinity:
        return zech(self, t)

    def entries(self) -> list[int | Infinity]:
        """Z(0), Z(1), ..., Z(T-1)."""
        return [INF] + list(self._zech[1:])

    @property
    def D(self) -> int:
        """Z(1), the constant driving the 102-CA length formulas."""
        return self._zech[1]


def build_zech_table(p: PolyLike) -> ZechTable:
    poly = validate_primitive(p)
    L, T, bits = poly.degree, poly.period, poly.bits
    code = "L" if L > 15 else "H"
    exp = array(code, bytes(array(code).itemsize * T))
    log = array(code, bytes(array(code).itemsize * (T + 1)))
    v = 1
    top = 1 << L
    for e in range(T):
        exp[e] = v
        log[v] = e
        v <<= 1
        if v & top:
            v ^= bits
    z = array(code, bytes(array(code).itemsize * T))
    for t in range(1, T):
        z[t] = log[exp[t] ^ 1]
    return ZechTable(poly, exp, log, z)


def zech(table: ZechTable, t: int) -> int | Infinity:
    """Z(t) with t taken mod T; ``INF`` exactly when t = 0 mod T."""
    t %= table.period
    return INF if t == 0 else table._zech[t]


def discrete_log(table: ZechTable, v: int) -> int | Infinity:
    if v == 0:
        return INF
    return table.log[v]


__all__ = [
    "INF",
    "Infinity",
    "PrimitivePolynomial",
    "ZechTable",
    "build_zech_table",
    "discrete_log",
    "factorize",
    "field_add",
    "field_mul",
    "field_pow",
    "format_poly",
    "is_irreducible",
    "max_degree",
    "order_of_x",
    "parse_poly",
    "pdivmod",
    "pgcd",
    "pmod",
    "pmul",
    "poly_bitstring",
    "ppow",
    "primitive_polynomials",
    "reciprocal",
    "validate_primitive",
    "zech",
]
