"""Recompute the reference tables from first principles and diff against golden data."""

from __future__ import annotations

from dataclasses import dataclass, field

from . import ca102, ca9150
from .engine import CYCLIC, RuleVector, run, state_from_str, state_to_str
from .errors import BudgetExceeded, ValidationError
from .gf2field import build_zech_table, format_poly, validate_primitive
from .golden import TABLE_IDS, load_grid, load_hybrid_pairs, load_length_table, load_shift_table
from .interleave import InterleaveSpec, build_from_spec, make_spec
from .seqcore import ZERO, minimal_period, pn_sequence, shift_between

# Worked examples, keyed by the CA length they lead to.
EXAMPLES = {
    "len10": make_spec("1+x^3+x^4", (0, 4), "1111"),
    "len14": make_spec("1+x^2+x^3", (0, 1), "111"),
    "len28": make_spec("1+x^2+x^3", (0, 5, 4, 1), "100"),
}

HYBRID62_POLY = "1+x^2+x^5"
HYBRID62_SEED = "11111"
# second stream exactly as printed alongside the 62-bit hybrid example
HYBRID62_STREAM = "1000010010110011111000110111010"
HYBRID62_SEQUENCE = "11101010100100001110011110100111011101000000110100110111100100"
HYBRID62_BASE_RULES = ("01111", "11110")

# one fixed primitive polynomial per degree for the non-power-of-two length table
LENGTH_TABLE_POLYS = {3: "1+x^2+x^3", 4: "1+x^3+x^4", 5: "1+x^2+x^5"}
DEFAULT_CELLS = ((3, 3), (5, 3), (6, 3), (7, 3), (3, 4), (5, 4))
SWEEP_BUDGET = 2_000_000


def hybrid62_spec() -> InterleaveSpec:
    base = pn_sequence(HYBRID62_POLY, HYBRID62_SEED)
    k = shift_between(base, minimal_period(HYBRID62_STREAM))
    if k is None:
        raise ValidationError("printed stream is not a shift of the base sequence")
    return make_spec(HYBRID62_POLY, (0, k), HYBRID62_SEED)


@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""
    data: dict = field(default_factory=dict)

    def line(self) -> str:
        return f"{'PASS' if self.passed else 'FAIL'} {self.name}" + (f": {self.detail}" if self.detail else "")

    def to_json(self) -> dict:
        return {"name": self.name, "passed": self.passed, "detail": self.detail, **self.data}


def _grid_check(name: str, grid) -> Check:
    golden = load_grid(name).grid
    if grid == golden:
        return Check(name, True, f"{golden.height}x{golden.width} grid matches")
    bad = [r for r, (a, b) in enumerate(zip(grid.to_strings(), golden.to_strings())) if a != b]
    return Check(name, False, f"shape {grid.height}x{grid.width}, first differing rows {bad[:5]}")


def _table2a():
    target = pn_sequence("1+x^2+x^3", "100")
    width = ca102.pn_ca_length("1+x^2+x^3")
    return ca102.derived_ca(target, width)


def check_table2a() -> list[Check]:
    derived = _table2a()
    forward = run(ca102.rule102(derived.width), derived.rows[0], derived.height - 1)
    out = [_grid_check("table2a", derived)]
    out.append(Check("table2a forward run", forward == derived))
    return out


def check_table2b() -> list[Check]:
    a = _table2a()
    rv = RuleVector((60,) * a.width, CYCLIC)
    init = state_from_str(state_to_str(a.rows[0], a.width)[::-1])
    grid = run(rv, init, a.height - 1)
    return [
        _grid_check("table2b", grid),
        Check("table2b mirrors table2a", grid == a.reversed_cells()),
    ]


def check_table3(name: str) -> list[Check]:
    rules = dict(zip(("table3a", "table3b"), ca9150.synthesize_pn_ca("1+x^2+x^3")))[name]
    ok, grid = ca9150.verify_column0(rules, pn_sequence("1+x^2+x^3", "100"))
    return [_grid_check(name, grid), Check(f"{name} column 0 verified ({rules})", ok)]


def check_table4() -> list[Check]:
    golden = load_shift_table()
    spec = make_spec(golden.poly, golden.shifts, golden.seed)
    table = build_zech_table(spec.poly)
    width = len(golden.rows[0])
    expected = [tuple(row[j] for row in golden.rows) for j in range(width)]

    def norm(ledger):
        return [tuple(None if k is ZERO else k for k in e.parts) for e in ledger]

    pred = norm(ca102.predicted_ledger(spec, table, width))
    obs = norm(ca102.observed_ledger(build_from_spec(spec), 2, spec.base(), width))
    return [
        Check("table4 predicted ledger", pred == expected, "" if pred == expected else f"got {pred}"),
        Check("table4 observed ledger", obs == expected, "" if obs == expected else f"got {obs}"),
    ]


def length_cell(t: int, L: int) -> Check:
    table = load_length_table()
    if (t, L) not in table:
        raise ValidationError(f"no table entry for t={t}, L={L}")
    text, bound = table[t, L]
    poly = validate_primitive(LENGTH_TABLE_POLYS[L])
    if poly.period ** (t - 1) > SWEEP_BUDGET:
        raise BudgetExceeded(f"t={t}, L={L} needs {poly.period ** (t - 1)} tuples")
    res = ca102.shift_tuple_sweep(poly, t, bound)
    sample = None
    if res.first_violation is not None:
        seq = ca102.tuple_sequence(poly, res.first_violation)
        sample = ca102.closure_order(seq)
    name = f"table5 t{t}L{L}"
    detail = (
        f"{format_poly(poly.bits)}: {res.dividing}/{res.max_lc} max-LC tuples "
        f"(of {res.tuples}) have minimal length dividing {bound} = {text}"
    )
    if sample is not None:
        detail += f"; e.g. shifts {res.first_violation} give minimal length {sample}"
    return Check(name, res.all_divide and res.max_lc > 0, detail, {"sweep": res.to_json(), "sample_length": sample})


def parse_cells(text: str | None) -> tuple[tuple[int, int], ...]:
    if not text:
        return DEFAULT_CELLS
    cells = []
    for item in text.split(","):
        item = item.strip().lower()
        try:
            t_part, L_part = item[1:].split("l")
            cells.append((int(t_part), int(L_part)))
        except ValueError:
            raise ValidationError(f"cell {item!r} should look like t3L3") from None
    return tuple(cells)


def check_table5(cells=None) -> list[Check]:
    return [length_cell(t, L) for t, L in (cells or DEFAULT_CELLS)]


def check_table6() -> list[Check]:
    out = []
    for poly, pair in load_hybrid_pairs().items():
        got = ca9150.synthesize_pn_ca(poly)
        ok = sorted(got) == sorted(pair)
        out.append(Check(f"table6 {poly}", ok, f"{got[0]} {got[1]}"))
    return out


def check_table7(name: str) -> list[Check]:
    spec = hybrid62_spec()
    target = build_from_spec(spec)
    idx = {"table7a": 0, "table7b": 1}[name]
    rules = ca9150.mirror_expand(HYBRID62_BASE_RULES[idx], 1)
    ok, grid = ca9150.verify_column0(rules, target)
    return [
        Check(f"{name} target sequence", str(target) == HYBRID62_SEQUENCE),
        _grid_check(name, grid),
        Check(f"{name} column 0 verified ({rules})", ok),
    ]


def check_ca102(name: str) -> list[Check]:
    spec = EXAMPLES[name.split("_")[1]]
    syn = ca102.synthesize(spec)
    return [_grid_check(name, syn.grid)]


def reproduce(table_id: str, cells=None) -> list[Check]:
    if table_id == "all":
        out = []
        for tid in TABLE_IDS:
            out.extend(reproduce(tid, cells))
        return out
    if table_id == "table2a":
        return check_table2a()
    if table_id == "table2b":
        return check_table2b()
    if table_id in ("table3a", "table3b"):
        return check_table3(table_id)
    if table_id == "table4":
        return check_table4()
    if table_id == "table5":
        return check_table5(cells)
    if table_id == "table6":
        return check_table6()
    if table_id in ("table7a", "table7b"):
        return check_table7(table_id)
    if table_id.startswith("ca102_"):
        return check_ca102(table_id)
    raise ValidationError(f"unknown table {table_id!r}; choose from all, {', '.join(TABLE_IDS)}")
