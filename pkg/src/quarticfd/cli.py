"""Command-line interface: ``quarticfd <verb> [options]``."""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from fractions import Fraction

from .domain import DEFAULT_MAX_CELLS, CapReachedError, build_domain, verify_closed
from .field import BiquadraticField, FieldParams, classify_biquadratic, format_element
from .hull import facet_polytope, facet_to_off, find_seed, format_functional, parse_functional
from .lattice import load_lattice
from .presets import get_preset
from .report import run_preset
from .units import log_embedding, unit_group

PRECISION_ENV = "QUARTICFD_PRECISION"
DEFAULT_PRECISION = 128


def _default_precision() -> int:
    raw = os.environ.get(PRECISION_ENV)
    if not raw:
        return DEFAULT_PRECISION
    try:
        bits = int(raw)
    except ValueError:
        raise SystemExit(f"{PRECISION_ENV} must be an integer number of bits, got {raw!r}")
    if bits < 16:
        raise SystemExit(f"{PRECISION_ENV} must be at least 16")
    return bits


def _parse_field(text: str):
    try:
        two_a, b = (int(t) for t in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected '2a,b' with positive integers, got {text!r}")
    if two_a < 1 or b < 1:
        raise argparse.ArgumentTypeError("2a and b must be positive")
    return two_a, b


def _parse_seed(text: str):
    try:
        return parse_functional(text)
    except ValueError as err:
        raise argparse.ArgumentTypeError(str(err))


def _context(args, need_seed=False):
    """Field, lattice and seed from ``--preset`` or the explicit flags."""
    preset = get_preset(args.preset) if getattr(args, "preset", None) else None
    if args.field is None and preset is None:
        raise SystemExit("give --field 2a,b or --preset NAME")
    two_a, b = args.field if args.field else (preset.two_a, preset.b)
    field = BiquadraticField(two_a, b)
    if args.lattice:
        lat = load_lattice(args.lattice)
    elif preset is not None:
        lat = preset.lattice()
    else:
        lat = load_lattice("identity")
    seed = getattr(args, "seed", None) or (preset.seed if preset is not None else None)
    if need_seed and seed is None:
        seed = find_seed(lat, field)
    return field, lat, seed


def _emit(args, data: dict, text: str):
    if args.json:
        print(json.dumps(data, indent=2))
    else:
        print(text, end="" if text.endswith("\n") else "\n")


def _strs(v):
    return [str(x) for x in v]


# verbs ----------------------------------------------------------------------


def cmd_classify(args):
    two_a, b = args.field
    params = FieldParams(two_a, b)
    cl = classify_biquadratic(params)
    data = {"two_a": two_a, "b": b, "classification": cl.kind.value, "c": None if cl.c is None else str(cl.c)}
    lines = [f"x^4 - {two_a}x^2 + {b}: {cl}"]
    if cl.is_galois:
        field = BiquadraticField(two_a, b)
        roots = field.roots(Fraction(1, 2**args.precision))
        data["roots"] = [[str(lo), str(hi)] for lo, hi in roots.intervals]
        data["generators"] = [format_element(s.image_of_x) for s in field.generator_automorphisms()]
        lines.append("generators: " + ", ".join(f"x -> {g}" for g in data["generators"]))
        lines += [f"x{i + 1} in [{float(lo):.12f}, {float(hi):.12f}]" for i, (lo, hi) in enumerate(roots.intervals)]
    _emit(args, data, "\n".join(lines))
    return 0


def cmd_facet(args):
    field, lat, seed = _context(args, need_seed=True)
    f = facet_polytope(*seed, lat, field)
    data = {
        "functional": list(f.functional), "level": f.level, "f_vector": list(f.f_vector),
        "vertices": [_strs(v) for v in f.vertices], "points": [_strs(p) for p in f.points],
        "faces": [list(face) for face in f.faces],
        "norms": [str(field.norm(p)) for p in f.points],
    }
    lines = [f"facet {format_functional(f.functional, f.level)}: {len(f.points)} points, f-vector {f.f_vector}"]
    for p in f.points:
        kind = f.classify_point(p)
        lines.append(f"  {format_element(p):28s} {kind:9s} norm {field.norm(p)}")
    lines.append("faces: " + " ".join(f"[{','.join(map(str, face))}]" for face in f.faces))
    _emit(args, data, "\n".join(lines))
    return 0


def cmd_units(args):
    field, lat, _ = _context(args)
    group = unit_group(lat, field)
    logs = [[float(x) for x in log_embedding(g, field, args.precision).values] for g in group.generators]
    data = {"generators": [_strs(g) for g in group.generators], "logs": logs, "rank": group.certified_rank()}
    lines = [f"totally positive unit group, certified rank {data['rank']}"]
    for g, lg in zip(group.generators, logs):
        lines.append(f"  {format_element(g):32s} log {' '.join(f'{x:+.6f}' for x in lg)}")
    _emit(args, data, "\n".join(lines))
    return 0


def _build(args):
    field, lat, seed = _context(args, need_seed=True)
    group = unit_group(lat, field)
    return build_domain(field, lat, group, seed, max_cells=args.max_cells)


def cmd_domain(args):
    try:
        cx = _build(args)
    except CapReachedError as err:
        cx = err.complex
        rep = verify_closed(cx)
        _emit(args, cx.to_dict(rep), f"{err}\n{len(cx.cells)} cells so far, {rep.free_faces} free faces")
        return 2
    rep = verify_closed(cx)
    lines = [f"{len(cx.cells)} cells, {len(cx.identifications)} identification pairs, {len(cx.gluings)} gluings"]
    for i, c in enumerate(cx.cells):
        lines.append(f"  cell {i}: {format_functional(c.functional, c.level)} f-vector {c.f_vector}")
    lines.append(f"closed: {rep.closed}  V,E,F,C = {rep.vertices},{rep.edges},{rep.faces},{rep.cells}  "
                 f"euler {rep.euler}  pseudo-manifold {rep.pseudo_manifold}")
    _emit(args, cx.to_dict(rep), "\n".join(lines))
    return 0 if rep.closed else 1


def cmd_verify(args):
    report = run_preset(args.preset_name, max_cells=args.max_cells)
    if args.json:
        print(report.to_json(), end="")
    else:
        print(report.to_text(), end="")
    return 0 if report.passed else 1


def cmd_export(args):
    if args.format == "off":
        field, lat, seed = _context(args, need_seed=True)
        text = facet_to_off(facet_polytope(*seed, lat, field))
    else:
        try:
            cx = _build(args)
        except CapReachedError as err:
            print(str(err), file=sys.stderr)
            return 2
        text = cx.to_json()
    if args.output and args.output != "-":
        with open(args.output, "w", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


# parser ---------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", type=_parse_field, help="defining polynomial x^4 - 2a x^2 + b as '2a,b'")
    common.add_argument("--lattice", help="lattice preset name or file with four rows of rationals")
    common.add_argument("--preset", help="take field, lattice and seed from a preset")
    common.add_argument("--seed", type=_parse_seed, help="support functional 'c3,c2,c1,c0;c'")
    common.add_argument("--precision", type=int, default=_default_precision(),
                        help=f"bits for root intervals and logs (default ${PRECISION_ENV} or {DEFAULT_PRECISION})")
    common.add_argument("--max-cells", type=int, default=DEFAULT_MAX_CELLS, help="cell cap for domain construction")
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="quarticfd", description=__doc__)
    sub = parser.add_subparsers(dest="verb", required=True)
    p = sub.add_parser("classify", parents=[common], help="Galois classification and roots")
    p.set_defaults(func=cmd_classify)
    p = sub.add_parser("facet", parents=[common], help="points and face lattice of a support functional")
    p.set_defaults(func=cmd_facet)
    p = sub.add_parser("units", parents=[common], help="generators of the totally positive unit group")
    p.set_defaults(func=cmd_units)
    p = sub.add_parser("domain", parents=[common], help="fundamental domain from a seed facet")
    p.set_defaults(func=cmd_domain)
    p = sub.add_parser("verify", parents=[common], help="run a preset against its reference data")
    p.add_argument("preset_name", metavar="preset")
    p.set_defaults(func=cmd_verify)
    p = sub.add_parser("export", parents=[common], help="write a domain as JSON or a facet as OFF")
    p.add_argument("format", choices=("json", "off"))
    p.add_argument("-o", "--output", help="output path (default stdout)")
    p.set_defaults(func=cmd_export)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(name)s: %(message)s")
    if args.verb == "classify" and args.field is None:
        parser.error("classify needs --field 2a,b")
    try:
        return args.func(args)
    except (ValueError, KeyError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
