"""Command-line interface.

Exit codes: 0 success, 1 reproduce mismatch, 2 invalid input,
3 internal invariant breach (a proven property failed: a bug or a
transcription error in the golden data).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path

from . import ca102, ca9150
from .engine import parse_rules, render, run, state_to_str
from .errors import InvariantBreach, ValidationError
from .gf2field import build_zech_table, validate_primitive, zech
from .golden import TABLE_IDS
from .interleave import analyze, build_from_spec, describe_minpoly, make_spec, spec_from_json
from .reproduce import parse_cells, reproduce
from .seqcore import format_shift

EPILOG = """\
formats:
  polynomials  "1+x+x^3" or ascending coefficients "1101"
  sequences    0/1 strings, bit 0 first
  rule strings 0/1 per cell (1 = rule 150, 0 = rule 90), or "102xN" / "60xN"
  spec files   JSON {"poly": "1+x^2+x^3", "seed": "111", "shifts": [0, 1]}

environment:
  CAWEAVE_MAX_L  degree cap for polynomials (default 24)

exit codes: 0 ok, 1 reproduce mismatch, 2 invalid input, 3 invariant breach
"""


class Mismatch(Exception):
    pass


def _csv(rows) -> str:
    buf = io.StringIO()
    csv.writer(buf, lineterminator="\n").writerows(rows)
    return buf.getvalue().rstrip("\n")


def _bool(v: bool) -> str:
    return "true" if v else "false"


def _spec(args):
    if getattr(args, "spec", None):
        try:
            data = json.loads(Path(args.spec).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise ValidationError(f"cannot read spec file {args.spec}: {exc}") from None
        return spec_from_json(data.get("spec", data) if isinstance(data, dict) else data)
    if not args.poly:
        raise ValidationError("--poly (or --spec FILE) is required")
    shifts = [0]
    if args.shifts:
        try:
            shifts = [int(x) for x in args.shifts.split(",")]
        except ValueError:
            raise ValidationError(f"--shifts must be a comma list of integers: {args.shifts!r}") from None
    if args.t is not None and len(shifts) != args.t:
        raise ValidationError(f"--t {args.t} but {len(shifts)} shifts given")
    return make_spec(args.poly, shifts, args.seed)


def cmd_zech(args) -> str:
    table = build_zech_table(validate_primitive(args.poly))
    if args.t is not None:
        value = zech(table, args.t)
        if args.format == "json":
            return json.dumps({"poly": str(table.poly), "t": args.t, "zech": str(value)})
        return str(value)
    entries = table.entries()
    if args.format == "json":
        return json.dumps({"poly": str(table.poly), "zech": [str(z) for z in entries]})
    if args.format == "csv":
        return _csv([("t", "zech")] + [(t, str(z)) for t, z in enumerate(entries)])
    width = max(len(str(len(entries))), 3)
    head = "t    " + " ".join(f"{t:>{width}}" for t in range(len(entries)))
    body = "Z(t) " + " ".join(f"{str(z):>{width}}" for z in entries)
    return head + "\n" + body


def cmd_interleave(args) -> str:
    spec = _spec(args)
    seq = build_from_spec(spec)
    rep = analyze(spec, seq)
    minpoly = describe_minpoly(rep.minimal_polynomial, spec.poly)
    if args.format == "json":
        return json.dumps({"spec": spec.to_json(), "sequence": seq.to_json(), "report": {**rep.to_json(), "minimal_polynomial": minpoly}})
    if args.format == "csv":
        return _csv([("period", "lc", "max_lc", "minpoly", "bits"), (rep.period, rep.lc, _bool(rep.is_max_lc), minpoly, str(seq))])
    lines = [
        str(seq),
        f"period={rep.period} lc={rep.lc} max_lc={_bool(rep.is_max_lc)} minpoly={minpoly}",
    ]
    if not rep.theorem_applies:
        lines.append(f"note: t={rep.t} is not a power of two")
    return "\n".join(lines)


def cmd_synth(args) -> str:
    spec = _spec(args)
    if args.family == "102":
        syn = ca102.synthesize(spec, cap=args.cap)
        if args.format == "json":
            return json.dumps(syn.to_json())
        if args.format == "csv":
            return ca102.ledger_csv(syn.ledger).rstrip("\n")
        lines = [
            f"family=102 length={syn.predicted_length} minimal_length={syn.minimal_length} period={syn.target.period}",
            f"sequence={syn.target}",
            "recurrence_shifts=" + ",".join(map(str, syn.recurrence_shifts)),
            "ledger:",
        ]
        lines += [f"  {e.column_index}: " + " ".join(format_shift(k) for k in e.parts) for e in syn.ledger]
        if args.render:
            lines += ["", render(syn.grid)]
        return "\n".join(lines)
    syn = ca9150.synthesize(spec)
    if args.format == "json":
        return json.dumps(syn.to_json())
    if args.format == "csv":
        return _csv([("rules", "length", "verified")] + [(r, len(r), _bool(v)) for r, v in zip(syn.pair, syn.verified)])
    lines = [
        f"family=90150 length={len(syn.pair[0])} period={syn.target.period}",
        f"sequence={syn.target}",
        f"base_rules={','.join(syn.base_pair)}",
        f"rules={','.join(syn.pair)}",
        f"verified={','.join(_bool(v) for v in syn.verified)}",
    ]
    if args.render:
        for r, g in zip(syn.pair, syn.grids):
            lines += ["", f"{r}:", render(g)]
    return "\n".join(lines)


def cmd_compare(args) -> str:
    spec = _spec(args)
    s1 = ca102.synthesize(spec, cap=args.cap)
    s2 = ca9150.synthesize(spec)
    row = {
        "spec": spec.to_json(),
        "period": s1.target.period,
        "ca102_length": s1.predicted_length,
        "ca102_minimal_length": s1.minimal_length,
        "ca90150_length": len(s2.pair[0]),
        "ca90150_rules": list(s2.pair),
        "ca90150_verified": list(s2.verified),
    }
    if args.format == "json":
        return json.dumps(row)
    if args.format == "csv":
        keys = [k for k in row if k != "spec"]
        return _csv([keys, [row[k] if not isinstance(row[k], list) else ";".join(map(str, row[k])) for k in keys]])
    return "\n".join([
        f"sequence period {row['period']}",
        f"102 cyclic regular CA: length {row['ca102_length']} (minimal {row['ca102_minimal_length']})",
        f"150/90 null hybrid CA: length {row['ca90150_length']} rules {', '.join(s2.pair)}",
    ])


def cmd_run(args) -> str:
    rv = parse_rules(args.rules, args.boundary)
    init = "".join(args.init.split())
    grid = run(rv, init, args.steps)
    if args.format == "json":
        return json.dumps({"rules": str(rv), "boundary": rv.boundary, "rows": grid.to_strings()})
    if args.format == "csv":
        return grid.to_csv().rstrip("\n")
    return render(grid) if args.render else "\n".join(grid.to_strings())


def cmd_reproduce(args) -> str:
    cells = parse_cells(args.cells) if args.cells else None
    checks = reproduce(args.table, cells)
    if args.format == "json":
        out = json.dumps([c.to_json() for c in checks])
    elif args.format == "csv":
        out = _csv([("check", "status", "detail")] + [(c.name, "PASS" if c.passed else "FAIL", c.detail) for c in checks])
    else:
        out = "\n".join(c.line() for c in checks)
    if not all(c.passed for c in checks):
        raise Mismatch(out)
    return out


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json", "csv"), default="text")
    common.add_argument("--out", metavar="FILE", help="write output to FILE instead of stdout")

    specargs = argparse.ArgumentParser(add_help=False)
    specargs.add_argument("--poly", help="primitive polynomial")
    specargs.add_argument("--seed", help="LFSR seed, L bits (default 10...0)")
    specargs.add_argument("--shifts", help="comma list of stream shifts, e.g. 0,1")
    specargs.add_argument("--t", type=int, help="stream count (checked against --shifts)")
    specargs.add_argument("--spec", metavar="FILE", help="JSON spec file instead of --poly/--seed/--shifts")

    parser = argparse.ArgumentParser(
        prog="caweave",
        description="Interleaving sequences and the linear CAs that generate them.",
        epilog=EPILOG,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("zech", parents=[common], help="Zech logarithm table or single value")
    p.add_argument("--poly", required=True)
    p.add_argument("--t", type=int, help="single argument t (mod 2^L - 1)")
    p.set_defaults(func=cmd_zech)

    p = sub.add_parser("interleave", parents=[common, specargs], help="build and analyse an interleaving")
    p.set_defaults(func=cmd_interleave)

    p = sub.add_parser("synth", parents=[common, specargs], help="synthesise a CA for an interleaving")
    p.add_argument("--family", choices=("102", "90150"), required=True)
    p.add_argument("--render", action="store_true", help="append the time-space diagram")
    p.add_argument("--cap", type=int, help="search cap for the minimal CA length")
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("compare", parents=[common, specargs], help="both CA families side by side")
    p.add_argument("--cap", type=int)
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("run", parents=[common], help="evolve a CA from an initial state")
    p.add_argument("--rules", required=True, help='"102x7", "60x7", a 0/1 rule string or "90,90,150"')
    p.add_argument("--init", required=True, help="initial state, cell 0 first")
    p.add_argument("--steps", type=int, default=10)
    p.add_argument("--boundary", choices=("cyclic", "null"))
    p.add_argument("--render", action="store_true")
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("reproduce", parents=[common], help="recompute a reference table and diff it")
    p.add_argument("table", choices=("all",) + TABLE_IDS)
    p.add_argument("--cells", help="length-table cells, e.g. t3L3,t5L4")
    p.set_defaults(func=cmd_reproduce)
    return parser


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text + "\n")
    else:
        sys.stdout.write(text + "\n")


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "cap", None) is not None and args.cap < 1:
        print("error: --cap must be positive", file=sys.stderr)
        return 2
    try:
        _emit(args.func(args), args.out)
    except Mismatch as exc:
        _emit(str(exc), args.out)
        return 1
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except InvariantBreach as exc:
        print(f"invariant breach: {exc}", file=sys.stderr)
        return 3
    return 0


if __name__ == "__main__":
    sys.exit(main())
