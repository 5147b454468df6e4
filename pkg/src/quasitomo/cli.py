"""Command-line front end: ``quasitomo <command> ...``.

Every command is deterministic.  JSON goes to stdout unless ``--output`` is
given; ``witness`` and ``render`` also write SVG.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction
from pathlib import Path

from .cyclotomic import CycNum, from_json, to_json, totient
from .geometry import Direction, angle_sort, make_direction
from .modelset import (
    SUPPORTED_ORDERS,
    PointSet,
    UnsupportedOrderError,
    ammann_beenker,
    default_spec,
    generate_patch,
    homothety_into,
    lattice_spec,
    spec_from_json,
    spec_to_json,
)
from .presets import direction_set
from .render import RenderSpec, render_svg
from .unipoly import check_determination, hexagon_for, witness_pair_from_polygon
from .uniqueness import brute_force_determined, contiguous_pair, padded_hull, region_points, switching_pair
from .xray import xray


class CliError(Exception):
    pass


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _emit(text: str, output: str | None, default_name: str | None = None) -> None:
    if output is None:
        sys.stdout.write(text)
        return
    path = Path(output)
    if path.is_dir() and default_name:
        path = path / default_name
    path.write_text(text)


def _check_n(n: int) -> int:
    if n not in SUPPORTED_ORDERS:
        raise UnsupportedOrderError(f"unsupported order {n}; supported: {SUPPORTED_ORDERS}")
    return n


def _parse_dir(entry, n: int | None) -> Direction:
    """A direction from JSON: {"n", "rep"}, {"n", "coeffs"}, or a coefficient list."""
    if isinstance(entry, dict) and "rep" in entry:
        d = Direction.from_json(entry)
    elif isinstance(entry, dict):
        d = make_direction(from_json(entry))
    elif isinstance(entry, list):
        if n is None:
            raise CliError("plain coefficient lists need --n")
        d = make_direction(CycNum(n, [Fraction(c) for c in entry]))
    else:
        raise CliError(f"unknown direction format: {entry!r}")
    if n is not None and d.order != n:
        d = make_direction(d.rep, n)
    return d


def _load_json(text_or_path: str):
    p = Path(text_or_path)
    try:
        if p.exists():
            return json.loads(p.read_text())
        return json.loads(text_or_path)
    except json.JSONDecodeError as exc:
        raise CliError(f"malformed JSON: {exc}") from exc


def _directions(args, n: int | None) -> list[Direction]:
    if getattr(args, "preset_dirs", None):
        if n is None:
            raise CliError("--preset-dirs needs --n")
        return direction_set(args.preset_dirs, n)
    if not args.dirs:
        raise CliError("give --dirs or --preset-dirs")
    data = _load_json(args.dirs)
    if not isinstance(data, list):
        raise CliError("--dirs must be a JSON list")
    return [_parse_dir(e, n) for e in data]


def _load_points(path: str) -> PointSet:
    return PointSet.from_json(_load_json(path))


def _spec(args):
    if getattr(args, "spec", None):
        return spec_from_json(_load_json(args.spec))
    preset = getattr(args, "preset", None)
    if preset == "ammann-beenker":
        return ammann_beenker()
    if args.n is None:
        raise CliError("give --n, --preset or --spec")
    n = _check_n(args.n)
    if preset == "lattice":
        return lattice_spec(n)
    return default_spec(n)


# -- commands ----------------------------------------------------------------------------


def cmd_generate(args) -> int:
    spec = _spec(args)
    patch = generate_patch(spec, Fraction(args.radius))
    out = patch.to_json()
    out["spec"] = spec_to_json(spec)
    out["radius"] = str(Fraction(args.radius))
    _emit(_dump(out), args.output, "patch.json")
    return 0


def cmd_xray(args) -> int:
    patch = _load_points(args.patch)
    dirs = _directions(args, args.n or patch.order)
    if args.output is None:
        for u in dirs:
            sys.stdout.write(xray(patch, u).to_csv())
        return 0
    outdir = Path(args.output)
    outdir.mkdir(parents=True, exist_ok=True)
    for k, u in enumerate(dirs):
        (outdir / f"xray_{k}.csv").write_text(xray(patch, u).to_csv())
    return 0


def cmd_check(args) -> int:
    n = _check_n(args.n)
    dirs = _directions(args, n)
    verdict = check_determination(dirs, n)
    _emit(_dump(verdict.to_json()), args.output, "verdict.json")
    return 0


def cmd_hexagon(args) -> int:
    n = _check_n(args.n)
    dirs = _directions(args, n)
    P = hexagon_for(dirs, n)
    _emit(_dump({"n": n, "vertices": [to_json(v) for v in P.vertices],
                 "directions": [d.to_json() for d in dirs]}), args.output, "hexagon.json")
    return 0


def _witness_pair(args):
    n = _check_n(args.n)
    spec = spec_from_json(_load_json(args.spec)) if args.spec else default_spec(n)
    if args.kind in ("switching", "contiguous"):
        if args.dirs or args.preset_dirs:
            dirs = _directions(args, n)
        else:
            dirs = _random_dirs(n, args.k, args.seed)
        F, G = switching_pair(dirs, spec)
        if args.kind == "contiguous":
            region = padded_hull(F.points | G.points, n, args.margin + 1)
            F, G = contiguous_pair(F, G, region, spec, dirs)
        return spec, dirs, F, G
    # U-polygon: a hexagon for three directions, moved into the model set
    dirs = _directions(args, n)
    if len(dirs) != 3:
        raise CliError("--kind upolygon builds a hexagon and needs three directions")
    H = hexagon_for(dirs, n)
    h = homothety_into(list(H.vertices), spec)
    HP = H.map(h)
    F, G = witness_pair_from_polygon(HP, dirs, region_points(HP, spec))
    return spec, dirs, F, G


def _random_dirs(n: int, k: int, seed: int) -> list[Direction]:
    if n == 4 and k <= 4:
        pool = [[1, 0], [0, 1], [1, 1], [-1, 1]]
        return [make_direction(CycNum(4, c)) for c in pool[:k]]
    rng = random.Random(seed)
    dirs: list[Direction] = []
    while len(dirs) < k:
        c = [rng.randint(-1, 1) for _ in range(totient(n))]
        if not any(c):
            continue
        d = make_direction(CycNum(n, c))
        try:
            angle_sort(dirs + [d])
        except ValueError:
            continue
        dirs.append(d)
    return dirs


def cmd_witness(args) -> int:
    spec, dirs, F, G = _witness_pair(args)
    out = {"kind": args.kind, "spec": spec_to_json(spec), "directions": [d.to_json() for d in dirs],
           "F": F.to_json(), "F_prime": G.to_json()}
    text = _dump(out)
    svg = render_svg(F.points | G.points, RenderSpec(scale=args.scale, highlights=[F.sorted(), G.sorted()]))
    if args.output is None:
        sys.stdout.write(text)
    else:
        base = Path(args.output)
        if base.suffix == ".json":
            base = base.with_suffix("")
        base.parent.mkdir(parents=True, exist_ok=True)
        Path(str(base) + ".json").write_text(text)
        Path(str(base) + ".svg").write_text(svg)
    return 0


def cmd_oracle(args) -> int:
    patch = _load_points(args.patch)
    dirs = _directions(args, args.n or patch.order)
    report = brute_force_determined(patch, dirs, max_vertices=args.max_vertices, seed=args.seed)
    _emit(_dump(report.to_json()), args.output, "oracle.json")
    return 0


def cmd_render(args) -> int:
    data = _load_json(args.points)
    patch = PointSet.from_json(data)
    highlights = [_load_points(h).sorted() for h in (args.highlight or [])]
    window = None
    if args.window:
        if "spec" not in data:
            raise CliError("--window needs a patch file written by 'generate'")
        window = spec_from_json(data["spec"])
    svg = render_svg(patch, RenderSpec(scale=args.scale, point_radius=args.point_radius,
                                       highlights=highlights, window=window))
    _emit(svg, args.output, "figure.svg")
    return 0


# -- parser ------------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-o", "--output", help="output file (or directory for xray)")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized choices")
    common.add_argument("--jobs", type=int, default=1, help="accepted for compatibility; work is single-threaded")

    dirs = argparse.ArgumentParser(add_help=False)
    dirs.add_argument("--dirs", help="JSON list of directions, inline or a file path")
    dirs.add_argument("--preset-dirs", "--slopes-from", dest="preset_dirs", help="named direction set: U, U', U'', U5, U8, U10, U12")

    p = argparse.ArgumentParser(prog="quasitomo", description="Discrete tomography on cyclotomic model sets.",
                                parents=[common])
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", parents=[common], help="points of a model set in a disc")
    g.add_argument("--preset", choices=["ammann-beenker", "lattice", "default"])
    g.add_argument("--n", type=int)
    g.add_argument("--spec", help="model set spec JSON")
    g.add_argument("--radius", required=True)
    g.set_defaults(func=cmd_generate)

    x = sub.add_parser("xray", parents=[common, dirs], help="X-ray tables of a point set as CSV")
    x.add_argument("patch")
    x.add_argument("--n", type=int)
    x.set_defaults(func=cmd_xray)

    c = sub.add_parser("check-directions", parents=[common, dirs], help="algebraic determination test")
    c.add_argument("--n", type=int, required=True)
    c.set_defaults(func=cmd_check)

    h = sub.add_parser("hexagon", parents=[common, dirs], help="hexagonal U-polygon for three directions")
    h.add_argument("--n", type=int, required=True)
    h.set_defaults(func=cmd_hexagon)

    w = sub.add_parser("witness", parents=[common, dirs], help="two sets with equal X-rays")
    w.add_argument("--kind", choices=["switching", "contiguous", "upolygon"], default="switching")
    w.add_argument("--n", type=int, required=True)
    w.add_argument("--k", type=int, default=2, help="number of directions for random switching sets")
    w.add_argument("--spec", help="model set spec JSON (default: preset for --n)")
    w.add_argument("--margin", type=int, default=1, help="extra room around a contiguous pair")
    w.add_argument("--scale", type=float, default=40.0)
    w.set_defaults(func=cmd_witness)

    o = sub.add_parser("oracle", parents=[common, dirs], help="brute-force search for X-ray collisions")
    o.add_argument("--patch", required=True)
    o.add_argument("--n", type=int)
    o.add_argument("--max-vertices", type=int, default=10)
    o.set_defaults(func=cmd_oracle)

    r = sub.add_parser("render", parents=[common], help="SVG plot of a point set")
    r.add_argument("points")
    r.add_argument("--highlight", nargs="*", help="up to two PointSet JSON files")
    r.add_argument("--scale", type=float, default=40.0)
    r.add_argument("--point-radius", type=float, default=0.08)
    r.add_argument("--window", action="store_true", help="also draw star images inside the window")
    r.set_defaults(func=cmd_render)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UnsupportedOrderError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (CliError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
