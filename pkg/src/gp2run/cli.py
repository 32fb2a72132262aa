"""Command-line entry point.

Subcommands:

    run PROGRAM HOST [--mode preserving|reflecting] [--output FILE] [--time]
    gen KIND SIZE [--out FILE]
    bench PROGRAM --kind KIND --sizes S1,S2,... [--repeats R] [--csv FILE]
          [--plot FILE] [--mode ...]

Exit codes for run: 0 = success (result graph printed), 1 = program
failure (prints ``Fail``), 2 = parse or validation error.
"""

import argparse
import sys
import time

from . import bench as bench_mod
from .generators import KINDS, generate, GeneratorError
from .interpreter import Interpreter, ProgramError
from .matching import MODES, REFLECTING
from .parser import ParseError, parse_host_graph, parse_program, serialize_graph

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_DIAG = 2


def _read(path):
    with open(path, "r", encoding="utf-8") as f:
        return f.read()


def _write_out(text, path):
    if path is None or path == "-":
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")
    else:
        with open(path, "w", encoding="utf-8") as f:
            f.write(text)
            if not text.endswith("\n"):
                f.write("\n")


def cmd_run(args):
    try:
        program = parse_program(_read(args.program))
        host = parse_host_graph(_read(args.host))
    except (ParseError, ProgramError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_DIAG
    except OSError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_DIAG
    interp = Interpreter(program, host, args.mode)
    t0 = time.perf_counter()
    ok = interp.run()
    ms = (time.perf_counter() - t0) * 1000.0
    if args.time:
        print("%.3f ms, %d steps" % (ms, host.steps), file=sys.stderr)
    if not ok:
        print("Fail")
        return EXIT_FAIL
    _write_out(serialize_graph(host), args.output)
    return EXIT_OK


def cmd_gen(args):
    try:
        graph = generate(args.kind, args.size)
    except GeneratorError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_DIAG
    _write_out(serialize_graph(graph), args.out)
    return EXIT_OK


def cmd_bench(args):
    try:
        program = parse_program(_read(args.program))
    except (ParseError, ProgramError, OSError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_DIAG
    try:
        sizes = [int(s) for s in args.sizes.split(",") if s.strip()]
        records = bench_mod.run_points(
            program, args.program, args.kind, sizes,
            repeats=args.repeats, mode=args.mode,
            progress=lambda r: print(
                "%s %s %d: %.3f ms, %d steps" % (r.program, r.kind, r.size, r.ms, r.steps),
                file=sys.stderr),
        )
    except (GeneratorError, ValueError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_DIAG
    if args.csv:
        bench_mod.write_csv(records, args.csv)
    else:
        bench_mod.write_csv(records, sys.stdout)
    if args.plot:
        bench_mod.plot_records(records, args.plot)
    return EXIT_OK


def build_arg_parser():
    ap = argparse.ArgumentParser(
        prog="gp2run",
        description="Rooted graph transformation engine and benchmark harness.")
    sub = ap.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run a program on a host graph")
    p_run.add_argument("program")
    p_run.add_argument("host")
    p_run.add_argument("--mode", choices=MODES, default=REFLECTING)
    p_run.add_argument("--output", default=None, help="result graph file")
    p_run.add_argument("--time", action="store_true",
                       help="print execution time and steps to stderr")
    p_run.set_defaults(func=cmd_run)

    p_gen = sub.add_parser("gen", help="generate an input graph")
    p_gen.add_argument("kind", choices=KINDS)
    p_gen.add_argument("size", type=int,
                       help="node count (discrete/path/cycle), depth (btree) "
                            "or side length (grid)")
    p_gen.add_argument("--out", default=None)
    p_gen.set_defaults(func=cmd_gen)

    p_bench = sub.add_parser("bench", help="run a scaling benchmark")
    p_bench.add_argument("program")
    p_bench.add_argument("--kind", choices=KINDS, required=True)
    p_bench.add_argument("--sizes", required=True,
                         help="comma-separated ascending node counts")
    p_bench.add_argument("--repeats", type=int, default=3)
    p_bench.add_argument("--csv", default=None)
    p_bench.add_argument("--plot", default=None,
                         help="also render a scaling figure to this file")
    p_bench.add_argument("--mode", choices=MODES, default=REFLECTING)
    p_bench.set_defaults(func=cmd_bench)
    return ap


def main(argv=None):
    args = build_arg_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
