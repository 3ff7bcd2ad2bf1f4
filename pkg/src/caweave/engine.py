"""One-dimensional linear CA with rules 90, 150, 102 and 60.

States and rows are ints with bit ``i`` holding cell ``i``.  Every rule is
stored as a width-3 neighbourhood (left, centre, right); the coefficients are
read off the Wolfram truth table, so rule 102 is (0, 1, 1) and rule 60 is
(1, 1, 0).
"""

from __future__ import annotations

import csv
import io
import re
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import IndexOutOfRange, ValidationError, WidthMismatch
from .seqcore import PeriodicSequence, minimal_period

RULES = (90, 150, 102, 60)
CYCLIC = "cyclic"
NULL = "null"


def neighbourhood(rule: int) -> tuple[int, int, int]:
    """(left, centre, right) coefficients of a linear elementary rule."""
    if not 0 <= rule < 256:
        raise ValidationError(f"not an elementary rule: {rule}")
    coeffs = (rule >> 4 & 1, rule >> 2 & 1, rule >> 1 & 1)
    l, c, r = coeffs
    for idx in range(8):
        expect = (l & idx >> 2) ^ (c & idx >> 1) ^ (r & idx)
        if rule >> idx & 1 != expect:
            raise ValidationError(f"rule {rule} is not linear")
    return coeffs


_COEFFS = {r: neighbourhood(r) for r in RULES}


@dataclass(frozen=True)
class RuleVector:
    cells: tuple[int, ...]
    boundary: str

    def __post_init__(self):
        if not self.cells:
            raise ValidationError("a CA needs at least one cell")
        bad = sorted({r for r in self.cells if r not in _COEFFS})
        if bad:
            raise ValidationError(f"unsupported rules {bad}; allowed: {RULES}")
        if self.boundary not in (CYCLIC, NULL):
            raise ValidationError(f"boundary must be {CYCLIC!r} or {NULL!r}")

    @property
    def width(self) -> int:
        return len(self.cells)

    @property
    def is_regular(self) -> bool:
        return len(set(self.cells)) == 1

    @property
    def is_canonical(self) -> bool:
        """Regular 102/60 with cyclic boundary, or hybrid 90/150 with null boundary."""
        kinds = set(self.cells)
        if kinds <= {102} or kinds <= {60}:
            return self.boundary == CYCLIC
        return kinds <= {90, 150} and self.boundary == NULL

    def masks(self) -> tuple[int, int, int]:
        left = centre = right = 0
        for i, rule in enumerate(self.cells):
            l, c, r = _COEFFS[rule]
            left |= l << i
            centre |= c << i
            right |= r << i
        return left, centre, right

    def __str__(self) -> str:
        if self.is_regular and self.cells[0] in (102, 60):
            return f"{self.cells[0]}x{self.width}"
        if set(self.cells) <= {90, 150}:
            return "".join("1" if r == 150 else "0" for r in self.cells)
        return ",".join(map(str, self.cells))


_REGULAR = re.compile(r"^(\d+)x(\d+)$")


def parse_rules(text: str, boundary: str | None = None) -> RuleVector:
    """Parse ``"102x7"``, ``"60x7"``, a 0/1 string (1 = 150, 0 = 90) or ``"90,90,150"``.

    The boundary defaults to cyclic for regular 102/60 strings and null otherwise.
    """
    text = text.strip()
    m = _REGULAR.match(text)
    if m:
        rule, width = int(m.group(1)), int(m.group(2))
        return RuleVector((rule,) * width, boundary or (CYCLIC if rule in (102, 60) else NULL))
    if text and set(text) <= {"0", "1"}:
        return RuleVector(tuple(150 if ch == "1" else 90 for ch in text), boundary or NULL)
    try:
        cells = tuple(int(x) for x in text.split(","))
    except ValueError:
        raise ValidationError(f"cannot parse rule vector {text!r}") from None
    return RuleVector(cells, boundary or NULL)


def hybrid(rule_bits: str) -> RuleVector:
    return parse_rules(rule_bits, NULL)


def state_from_str(text: str) -> int:
    text = "".join(text.split())
    if set(text) - {"0", "1"}:
        raise ValidationError(f"state may only contain 0 and 1: {text!r}")
    return int(text[::-1], 2) if text else 0


def state_to_str(state: int, width: int) -> str:
    return format(state, f"0{width}b")[::-1]


def _coerce_state(rv: RuleVector, state: int | str) -> int:
    if isinstance(state, str):
        s = "".join(state.split())
        if len(s) != rv.width:
            raise WidthMismatch(f"state has {len(s)} cells, CA has {rv.width}")
        return state_from_str(s)
    if state < 0 or state >> rv.width:
        raise WidthMismatch(f"state does not fit in {rv.width} cells")
    return state


class Stepper:
    """Precomputed masks for repeated stepping of one rule vector."""

    def __init__(self, rv: RuleVector):
        self.rv = rv
        self.width = M = rv.width
        self.full = (1 << M) - 1
        self.left, self.centre, self.right = rv.masks()
        self.cyclic = rv.boundary == CYCLIC

    def __call__(self, x: int) -> int:
        M = self.width
        from_left = (x << 1) & self.full
        from_right = x >> 1
        if self.cyclic:
            from_left |= x >> (M - 1)
            from_right |= (x & 1) << (M - 1)
        return (self.left & from_left) ^ (self.centre & x) ^ (self.right & from_right)


def step(rv: RuleVector, state: int | str) -> int:
    """One time step; null boundaries see 0 outside the array, cyclic ones wrap."""
    return Stepper(rv)(_coerce_state(rv, state))


@dataclass(frozen=True)
class CaGrid:
    """Time-space diagram: ``rows[r]`` is the state at time r."""

    rows: tuple[int, ...]
    width: int

    def __post_init__(self):
        if self.width < 0:
            raise ValidationError("width must be non-negative")
        for r in self.rows:
            if r < 0 or r >> self.width:
                raise WidthMismatch("row wider than the grid")

    @classmethod
    def from_strings(cls, rows: Iterable[str]) -> "CaGrid":
        rows = ["".join(r.split()) for r in rows]
        widths = {len(r) for r in rows}
        if len(widths) > 1:
            raise WidthMismatch(f"rows have different widths: {sorted(widths)}")
        width = widths.pop() if widths else 0
        return cls(tuple(state_from_str(r) for r in rows), width)

    @classmethod
    def from_columns(cls, columns: Sequence[int], height: int) -> "CaGrid":
        """Build from packed columns (bit r of ``columns[j]`` is row r, cell j)."""
        rows = [0] * height
        for j, col in enumerate(columns):
            r = 0
            while col:
                if col & 1:
                    rows[r] |= 1 << j
                col >>= 1
                r += 1
        return cls(tuple(rows), len(columns))

    @property
    def height(self) -> int:
        return len(self.rows)

    def to_strings(self) -> list[str]:
        return [state_to_str(r, self.width) for r in self.rows]

    def column_bits(self, j: int) -> int:
        if not 0 <= j < self.width:
            raise IndexOutOfRange(f"column {j} outside width {self.width}")
        out = 0
        for r, row in enumerate(self.rows):
            out |= (row >> j & 1) << r
        return out

    def columns_bits(self) -> list[int]:
        cols = [0] * self.width
        for r, row in enumerate(self.rows):
            j = 0
            while row:
                if row & 1:
                    cols[j] |= 1 << r
                row >>= 1
                j += 1
        return cols

    def reversed_cells(self) -> "CaGrid":
        return CaGrid.from_strings(s[::-1] for s in self.to_strings())

    def ones(self) -> int:
        return sum(r.bit_count() for r in self.rows)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        for s in self.to_strings():
            w.writerow(list(s))
        return buf.getvalue()


def run(rv: RuleVector, init: int | str, steps: int) -> CaGrid:
    if steps < 0:
        raise ValidationError("steps must be non-negative")
    stepper = Stepper(rv)
    x = _coerce_state(rv, init)
    rows = [x]
    for _ in range(steps):
        x = stepper(x)
        rows.append(x)
    return CaGrid(tuple(rows), rv.width)


def column(grid: CaGrid, j: int) -> PeriodicSequence:
    """Vertical sequence of cell j over all grid rows, period-minimised.

    The grid must hold a whole number of periods of that cell.
    """
    if grid.height == 0:
        raise ValidationError("grid has no rows")
    return minimal_period((grid.column_bits(j), grid.height))


def sufficient_height(period_bound: int) -> int:
    """Rows needed to observe and confirm a period up to ``period_bound``."""
    return 2 * period_bound


FILLED = "█"
EMPTY = "·"


def render(grid: CaGrid) -> str:
    return "\n".join(s.replace("1", FILLED).replace("0", EMPTY) for s in grid.to_strings())


__all__ = [
    "CYCLIC",
    "CaGrid",
    "NULL",
    "RULES",
    "RuleVector",
    "Stepper",
    "column",
    "hybrid",
    "neighbourhood",
    "parse_rules",
    "render",
    "run",
    "state_from_str",
    "state_to_str",
    "step",
    "sufficient_height",
]
