"""Command-line interface.

Subcommands: embed, bench, render, oracle, validate, gen. Exit codes:
0 success / valid / exists, 1 heuristic failure / invalid / absent,
2 input or usage error. POLYCYCLE_OUT_DIR sets the default output
directory when --out is a bare filename.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from .bench import run_grid, to_csv
from .generators import GenConfig, GenerationExhaustedError, random_instance
from .instance import InstanceError
from .instance_io import (
    load_instance,
    parse_cycle,
    save_instance,
    serialize_instance,
    serialize_result,
)
from .pipeline import embed_cycle
from .render import render_svg
from .verification import InstanceTooLargeError, brute_force_exists, validate_cycle


def _out_path(raw: str | None, default_name: str) -> Path:
    base = os.environ.get("POLYCYCLE_OUT_DIR", "")
    if raw is None:
        raw = default_name
    path = Path(raw)
    if base and not path.is_absolute() and path.parent == Path("."):
        path = Path(base) / path
    return path


def _write(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text)


def _int_list(raw: str) -> list[int]:
    try:
        return [int(tok) for tok in raw.replace(",", " ").split()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected integers, got {raw!r}")


def cmd_embed(args) -> int:
    inst = load_instance(args.instance)
    result = embed_cycle(inst)
    text = serialize_result(
        result.cycle if result.success else None,
        None if result.success else result.describe()[5:],
    )
    if args.out:
        _write(_out_path(args.out, "result.txt"), text)
    sys.stdout.write(text)
    return 0 if result.success else 1


def cmd_oracle(args) -> int:
    inst = load_instance(args.instance)
    exists, witness = brute_force_exists(inst, cap=args.oracle_cap)
    if exists:
        sys.stdout.write(
            "EXISTS " + " ".join(str(i + 1) for i in witness) + "\n"
        )
        return 0
    sys.stdout.write("ABSENT\n")
    return 1


def cmd_validate(args) -> int:
    inst = load_instance(args.instance)
    cycle = parse_cycle(Path(args.cycle).read_text())
    if len(cycle) != inst.n or not all(0 <= c < inst.n for c in cycle):
        raise InstanceError("cycle ids do not match the instance point count")
    report = validate_cycle(inst, cycle)
    if report.valid:
        sys.stdout.write("VALID\n")
        return 0
    for kind, witness in report.violations:
        sys.stdout.write(f"INVALID {kind} {witness}\n")
    return 1


def cmd_render(args) -> int:
    inst = load_instance(args.instance)
    cycle = None
    if args.result:
        cycle = parse_cycle(Path(args.result).read_text())
    result = embed_cycle(inst)
    svg = render_svg(inst, result=result, cycle=cycle)
    path = _out_path(args.out, "scene.svg")
    _write(path, svg)
    sys.stdout.write(f"{path}\n")
    return 0


def cmd_gen(args) -> int:
    cfg = GenConfig(m=args.m, n=args.n, seed=args.seed)
    inst = random_instance(cfg, name=f"gen-m{args.m}-n{args.n}-s{args.seed}")
    text = serialize_instance(inst)
    if args.out:
        _write(_out_path(args.out, "instance.txt"), text)
    sys.stdout.write(text)
    return 0


def cmd_bench(args) -> int:
    cells = run_grid(args.grid_m, args.grid_n, args.cells, args.seed)
    csv = to_csv(cells, with_timing=not args.no_timing)
    if args.out:
        _write(_out_path(args.out, "bench.csv"), csv)
    sys.stdout.write(csv)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="polycycle",
        description=(
            "Straight-line Hamiltonian cycle embedding on points inside "
            "simple polygons"
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("embed", help="run the embedding heuristic")
    p.add_argument("instance")
    p.add_argument("--out")
    p.set_defaults(func=cmd_embed)

    p = sub.add_parser("oracle", help="brute-force existence check")
    p.add_argument("instance")
    p.add_argument("--oracle-cap", type=int, default=9)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("validate", help="check a cycle against an instance")
    p.add_argument("instance")
    p.add_argument("cycle")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("render", help="draw an instance or result as SVG")
    p.add_argument("instance")
    p.add_argument("--result", help="cycle file to draw instead of re-embedding")
    p.add_argument("--out")
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("gen", help="generate a random instance")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("bench", help="run the success-rate grid")
    p.add_argument("--grid-m", type=_int_list, default=[5, 10, 15, 20, 25])
    p.add_argument("--grid-n", type=_int_list, default=[5, 10, 15, 20, 25, 30])
    p.add_argument("--cells", type=int, default=25, help="trials per cell")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--no-timing", action="store_true")
    p.add_argument("--out")
    p.set_defaults(func=cmd_bench)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (InstanceError, InstanceTooLargeError, GenerationExhaustedError,
            FileNotFoundError, ValueError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
