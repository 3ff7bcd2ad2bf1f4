"""Loaders for the transcribed reference tables shipped in ``data/``."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from importlib import resources

from .engine import CaGrid, parse_rules, RuleVector
from .errors import ValidationError

GRID_IDS = (
    "table2a",
    "table2b",
    "table3a",
    "table3b",
    "table7a",
    "table7b",
    "ca102_len10",
    "ca102_len14",
    "ca102_len28",
)
TABLE_IDS = GRID_IDS[:4] + ("table4", "table5", "table6") + GRID_IDS[4:]


def _lines(name: str) -> list[str]:
    try:
        text = resources.files("caweave").joinpath("data", f"{name}.txt").read_text(encoding="utf-8")
    except FileNotFoundError:
        raise ValidationError(f"unknown table {name!r}; choose from {', '.join(TABLE_IDS)}") from None
    return [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]


def _split_meta(lines: list[str]) -> tuple[dict[str, str], list[str]]:
    meta, body = {}, []
    for ln in lines:
        key, sep, value = ln.partition(":")
        if sep and key.isidentifier():
            meta[key] = value.strip()
        else:
            body.append(ln)
    return meta, body


@dataclass(frozen=True)
class GoldenGrid:
    name: str
    rules: RuleVector
    grid: CaGrid


@lru_cache(maxsize=None)
def load_grid(name: str) -> GoldenGrid:
    if name not in GRID_IDS:
        raise ValidationError(f"{name!r} is not a grid table")
    meta, body = _split_meta(_lines(name))
    rv = parse_rules(meta["rules"], meta["boundary"])
    return GoldenGrid(name, rv, CaGrid.from_strings(body))


@dataclass(frozen=True)
class ShiftTable:
    poly: str
    seed: str
    shifts: tuple[int, ...]
    rows: tuple[tuple[int | None, ...], ...]


@lru_cache(maxsize=None)
def load_shift_table() -> ShiftTable:
    meta, _ = _split_meta(_lines("table4"))
    rows = []
    for key in ("k1", "k2"):
        rows.append(tuple(None if x == "-" else int(x) for x in meta[key].split()))
    shifts = tuple(int(x) for x in meta["shifts"].split(","))
    return ShiftTable(meta["poly"], meta["seed"], shifts, tuple(rows))


@lru_cache(maxsize=None)
def load_length_table() -> dict[tuple[int, int], tuple[str, int]]:
    """(t, L) -> (factored text, value)."""
    out = {}
    for ln in _lines("table5"):
        t, L, text, value = ln.split()
        out[int(t), int(L)] = (text, int(value))
    return out


@lru_cache(maxsize=None)
def load_hybrid_pairs() -> dict[str, tuple[str, str]]:
    """polynomial text -> the two rule strings as listed."""
    out = {}
    for ln in _lines("table6"):
        poly, a, b = ln.split()
        out[poly] = (a, b)
    return out
