"""Command line interface.

Exit status: 0 on success, 1 when the input is well formed but violates a
mathematical precondition (the error text is printed), 2 on usage errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from typing import Optional, Sequence

from .errors import DomainError
from .exact import fmt
from .height import (
    Classification,
    classify,
    height,
    lhe,
    nbt,
    rhe,
    word_cq,
    word_wq,
)
from .outside import (
    N_f,
    in_gamma,
    orbit,
    point,
    rotation_number,
    verify_thm414,
)
from .symbolic import BinarySeq
from .unimodal import TentMap, UnimodalMap, classify_map, kneading, parse_map_spec


class UsageError(Exception):
    pass


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"not a fraction: {text!r}") from exc


def _seq(text: str) -> BinarySeq:
    try:
        return BinarySeq.parse(text)
    except DomainError as exc:
        raise UsageError(str(exc)) from exc


def _map(text: str) -> UnimodalMap:
    try:
        return parse_map_spec(text)
    except DomainError:
        raise
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _is_mapspec(text: str) -> bool:
    return ":" in text


def _height_str(q) -> str:
    return str(q)


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False)


# ---------------------------------------------------------------------------
# subcommands


def cmd_height(args, out) -> None:
    print(_height_str(height(_seq(args.seq))), file=out)


def cmd_words(args, out) -> None:
    q = _fraction(args.q)
    print(f"c={word_cq(q)}", file=out)
    print(f"w={word_wq(q)}", file=out)
    print(f"lhe={lhe(q)}", file=out)
    print(f"rhe={rhe(q)}", file=out)
    print(f"nbt={nbt(q)}", file=out)


def _classify_any(text: str, tent: bool) -> tuple[str, Classification]:
    if _is_mapspec(text):
        m = _map(text)
        kap, cls = classify_map(m)
        return str(kap), cls
    s = _seq(text)
    return str(s), classify(s, tent=tent)


def cmd_classify(args, out) -> None:
    kap, cls = _classify_any(args.target, args.tent)
    d = {"kneading": kap}
    d.update(cls.to_dict())
    print(_dump(d), file=out)


def cmd_kneading(args, out) -> None:
    print(str(kneading(_map(args.map))), file=out)


def cmd_outside_orbit(args, out) -> None:
    m = _map(args.map)
    if args.steps < 0:
        raise UsageError("--steps must be nonnegative")
    w = csv.writer(out, lineterminator="\n")
    w.writerow(["step", "coordinate", "side", "in_gamma"])
    for r, p in enumerate(orbit(m, point(m, m.a), args.steps)):
        w.writerow([r, fmt(p.x), p.side, int(in_gamma(m, p))])


def cmd_rotation(args, out) -> None:
    print(str(rotation_number(_map(args.map), args.cap)), file=out)


def cmd_verify(args, out) -> int:
    rep = verify_thm414(_map(args.map), cap=args.cap, net=args.net)
    print(_dump(rep.to_dict()), file=out)
    return 0 if rep.ok else 1


def _report_source(text: str, tent: bool):
    if _is_mapspec(text):
        return _map(text), None
    from .height import TENT_FACTS

    return _seq(text), TENT_FACTS if tent else None


def cmd_prime_ends(args, out) -> None:
    from . import primeends as pe

    src, facts = _report_source(args.target, args.tent)
    rep = pe.prime_end_report(src, facts)
    d = rep.to_dict()
    if args.depth and isinstance(src, UnimodalMap):
        d["landing"] = _landing_section(src, args.depth)
    print(_dump(d), file=out)


def _landing_section(m: UnimodalMap, depth: int) -> dict:
    from . import primeends as pe

    out = {}
    specs = {"t(a,0,0)": pe.TThread(point(m, m.a), 0, 0), "q_0": pe.QThread(0), "p_0": pe.PThread(0)}
    for name, spec in specs.items():
        try:
            out[name] = [fmt(x) for x in pe.landing_prefix(m, spec, depth)]
        except DomainError as exc:
            out[name] = f"unavailable: {exc}"
    return out


def cmd_fibers(args, out) -> None:
    from . import primeends as pe

    src, facts = _report_source(args.target, args.tent)
    print(_dump(pe.fiber_report(src, facts).to_dict()), file=out)


def _size(text: str) -> tuple[int, int]:
    try:
        w, h = text.lower().split("x")
        return int(w), int(h)
    except ValueError as exc:
        raise UsageError(f"--size must look like 800x800, got {text!r}") from exc


def cmd_render(args, out) -> None:
    from . import render

    w, h = _size(args.size)
    path = args.output
    svg = path.lower().endswith(".svg")
    if not svg and not path.lower().endswith((".ppm", ".pgm")):
        raise UsageError("output file must end in .ppm or .svg")
    grid = render.attractor_raster(_map(args.map), args.depth, w, h)
    if svg:
        render.write_svg(grid, path)
    else:
        render.write_ppm(grid, path)
    print(f"wrote {path} ({w}x{h}, depth {args.depth})", file=out)


# ---------------------------------------------------------------------------
# sweeps

SWEEP_PREFIX = 40  # symbols shown for a kneading sequence that did not close
SWEEP_HEADER = ["slope", "kneading", "height", "type", "rotation", "N_f", "pe_kind", "pcf", "gpa", "pa"]


def _slopes(text: str) -> list[Fraction]:
    parts = text.split(":")
    if len(parts) != 3:
        raise UsageError("--slopes must look like a/b:c/d:step")
    lo, hi, step = (_fraction(p) for p in parts)
    if step <= 0 or lo > hi:
        raise UsageError("--slopes needs lo <= hi and a positive step")
    out = []
    s = lo
    while s <= hi:
        out.append(s)
        s += step
    return out


def sweep_row(slope: Fraction, cap: int = 200) -> list[str]:
    from . import primeends as pe

    try:
        m = TentMap(slope)
    except DomainError as exc:
        return [str(slope), "", "", f"error: {exc}", "", "", "", "", "", ""]
    kap, cls = classify_map(m, cap)
    kap_text = str(kap) if isinstance(kap, BinarySeq) else kap.word[:SWEEP_PREFIX] + "..."
    try:
        pe_kind = pe.prime_end_report(m).kind
    except DomainError:
        pe_kind = "undecided"
    flags = pe.pa_flags(m, cap)
    nf = N_f(m, cap)
    rho = rotation_number(m, cap)
    return [
        str(slope),
        kap_text,
        _height_str(cls.height),
        cls.leaf.value,
        str(rho),
        str(nf),
        pe_kind,
        "undecided" if flags.undecided_pcf else str(int(flags.post_critically_finite)),
        str(int(flags.generalized_pA)),
        str(int(flags.pA)),
    ]


def sweep(slopes: Sequence[Fraction], cap: int = 200, jobs: int = 1) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(SWEEP_HEADER)
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            rows = list(ex.map(sweep_row, slopes, [cap] * len(slopes)))
    else:
        rows = [sweep_row(s, cap) for s in slopes]
    for row in rows:
        w.writerow(row)
    return buf.getvalue()


def cmd_sweep(args, out) -> None:
    text = sweep(_slopes(args.slopes), args.cap, args.jobs)
    if args.out:
        with open(args.out, "w", newline="") as fh:
            fh.write(text)
        print(f"wrote {args.out}", file=out)
    else:
        out.write(text)


# ---------------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="kneading", description="Kneading theory, outside maps and attractor rendering.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("height", help="height of a kneading sequence")
    s.add_argument("seq")
    s.set_defaults(func=cmd_height)

    s = sub.add_parser("words", help="height words and endpoint sequences for m/n")
    s.add_argument("q")
    s.set_defaults(func=cmd_words)

    s = sub.add_parser("classify", help="type of a sequence or a map")
    s.add_argument("target", help="sequence like (1001110) or map spec like tent:9/5")
    s.add_argument("--tent", action="store_true", help="the sequence comes from a tent map")
    s.set_defaults(func=cmd_classify)

    s = sub.add_parser("kneading", help="kneading sequence of a map")
    s.add_argument("map")
    s.set_defaults(func=cmd_kneading)

    s = sub.add_parser("outside-orbit", help="orbit of a under the outside map, as CSV")
    s.add_argument("map")
    s.add_argument("--steps", type=int, default=20)
    s.set_defaults(func=cmd_outside_orbit)

    s = sub.add_parser("rotation", help="rotation number of the outside map")
    s.add_argument("map")
    s.add_argument("--cap", type=int, default=10_000)
    s.set_defaults(func=cmd_rotation)

    s = sub.add_parser("verify-414", help="check the outside-dynamics theorem clauses")
    s.add_argument("map")
    s.add_argument("--cap", type=int, default=10_000)
    s.add_argument("--net", type=int, default=0, help="size of the spot-check net on the circle")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("prime-ends", help="prime-end report as JSON")
    s.add_argument("target")
    s.add_argument("--tent", action="store_true")
    s.add_argument("--depth", type=int, default=0, help="add landing-point prefixes of this length")
    s.set_defaults(func=cmd_prime_ends)

    s = sub.add_parser("fibers", help="fiber report as JSON")
    s.add_argument("target")
    s.add_argument("--tent", action="store_true")
    s.set_defaults(func=cmd_fibers)

    s = sub.add_parser("render", help="raster image of the attractor")
    s.add_argument("map")
    s.add_argument("--depth", type=int, default=8)
    s.add_argument("--size", default="800x800")
    s.add_argument("-o", "--output", required=True)
    s.set_defaults(func=cmd_render)

    s = sub.add_parser("sweep", help="CSV table over a range of tent slopes")
    s.add_argument("--slopes", required=True, help="lo:hi:step, e.g. 3/2:2:1/20")
    s.add_argument("--out")
    s.add_argument("--cap", type=int, default=200)
    s.add_argument("--jobs", type=int, default=1)
    s.set_defaults(func=cmd_sweep)
    return p


_PARSER: Optional[argparse.ArgumentParser] = None


def run(argv: Optional[Sequence[str]] = None, out=None, err=None) -> int:
    global _PARSER
    out = out or sys.stdout
    err = err or sys.stderr
    if _PARSER is None:
        _PARSER = build_parser()
    try:
        args = _PARSER.parse_args(argv)
        rc = args.func(args, out)
        return rc or 0
    except UsageError as exc:
        print(f"usage error: {exc}", file=err)
        return 2
    except DomainError as exc:
        print(f"error: {exc}", file=err)
        return 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
