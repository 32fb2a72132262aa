"""Scaling benchmark harness.

Runs a program over generated inputs of increasing size and records wall
time plus the engine's instrumented step count (matching steps plus
mutation count), which makes asymptotic-class checks immune to timer
noise.  Records go to CSV with columns ``program,kind,size,ms,steps``;
optionally a scaling figure is rendered next to the CSV.
"""

import csv
import sys
import time
from dataclasses import dataclass

from .generators import generate, param_for_nodes
from .interpreter import Interpreter
from .matching import REFLECTING

CSV_HEADER = ("program", "kind", "size", "ms", "steps")


@dataclass
class BenchRecord:
    program: str
    kind: str
    size: int        # node count of the input graph
    ms: float        # wall time of program execution, min over repeats
    steps: int       # instrumented steps, min over repeats
    ok: bool = True  # program succeeded on this input


def run_once(program, graph, mode=REFLECTING):
    """Execute program on graph; returns (success, ms, steps)."""
    interp = Interpreter(program, graph, mode)
    before = graph.steps
    t0 = time.perf_counter()
    ok = interp.run()
    ms = (time.perf_counter() - t0) * 1000.0
    return ok, ms, graph.steps - before


def run_points(program, program_name, kind, sizes, repeats=3,
               mode=REFLECTING, progress=None):
    """One BenchRecord per size; each point repeated, minimum reported."""
    if repeats < 1:
        raise ValueError("repeats must be >= 1")
    if list(sizes) != sorted(sizes):
        raise ValueError("sizes must be ascending")
    records = []
    for size in sizes:
        param = param_for_nodes(kind, size)
        best_ms = None
        best_steps = None
        ok = True
        for _ in range(repeats):
            graph = generate(kind, param)
            ok, ms, steps = run_once(program, graph, mode)
            if best_ms is None or ms < best_ms:
                best_ms = ms
            if best_steps is None or steps < best_steps:
                best_steps = steps
        rec = BenchRecord(program_name, kind, size, best_ms, best_steps, ok)
        if not ok:
            print("bench: %s failed on %s(%d)" % (program_name, kind, size),
                  file=sys.stderr)
        records.append(rec)
        if progress is not None:
            progress(rec)
    return records


def write_csv(records, out):
    """Write records to a path or file object."""
    close = False
    if isinstance(out, str):
        out = open(out, "w", newline="")
        close = True
    try:
        w = csv.writer(out)
        w.writerow(CSV_HEADER)
        for r in records:
            w.writerow([r.program, r.kind, r.size, "%.3f" % r.ms, r.steps])
    finally:
        if close:
            out.close()


def doubling_ratios(values):
    """Ratios between consecutive values (for size-doubling sequences)."""
    return [b / a for a, b in zip(values, values[1:]) if a]


def plot_records(records, out_path):
    """Render time and step scaling curves to an image file."""
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    by_series = {}
    for r in records:
        by_series.setdefault((r.program, r.kind), []).append(r)
    fig, (ax_time, ax_steps) = plt.subplots(1, 2, figsize=(10, 4))
    for (program, kind), recs in sorted(by_series.items()):
        xs = [r.size for r in recs]
        ax_time.plot(xs, [r.ms for r in recs], marker="s",
                     label="%s on %s" % (program, kind))
        ax_steps.plot(xs, [r.steps for r in recs], marker="s",
                      label="%s on %s" % (program, kind))
    ax_time.set_xlabel("Number of nodes in input graph")
    ax_time.set_ylabel("Execution time (ms)")
    ax_steps.set_xlabel("Number of nodes in input graph")
    ax_steps.set_ylabel("Instrumented steps")
    ax_time.grid(True, linestyle="--", alpha=0.5)
    ax_steps.grid(True, linestyle="--", alpha=0.5)
    ax_time.legend()
    fig.tight_layout()
    fig.savefig(out_path, dpi=120)
    plt.close(fig)
