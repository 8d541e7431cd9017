"""Command-line interface: ``tww <command> ...``.

Exit codes: 0 accept or success, 1 reject or failed check, 2 bad input.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from .dh import classify_dh_twin_width, connected_components, dh_elimination, split_tree_dh
from .generators import GENERATORS
from .graph import Graph, SequenceError, induced_subgraph, verify_sequence
from .io import ParseError, dump_sequence, read_graph, read_sequence, write_sequence
from .modular import modular_decomposition
from .oracle import OracleBudgetExceeded, brute_force_tww
from .permgraph import compute_realiser, diagram_layout
from .tww1 import recognize

EXIT_OK, EXIT_REJECT, EXIT_INPUT = 0, 1, 2


def _emit_json(obj) -> None:
    print(json.dumps(obj, sort_keys=True, indent=2))


def _load(args) -> Graph:
    return read_graph(args.graph, getattr(args, "format_in", None))


def cmd_recognize(args) -> int:
    g = _load(args)
    out = recognize(g, seed=args.seed)
    if args.json:
        report = {"n": g.n, "m": g.m, "accepted": out.accepted}
        if out.accepted:
            report["width"] = out.sequence.claimed_width
            report["max_red_degree"] = out.report.max_red_degree
        else:
            report["reason"] = out.reason_tag
        _emit_json(report)
    if out.accepted:
        if args.emit:
            write_sequence(out.sequence, args.emit)
        elif not args.json:
            sys.stdout.write(dump_sequence(out.sequence))
        if not args.json:
            print(f"accepted: twin-width <= 1 (max red degree {out.report.max_red_degree})", file=sys.stderr)
        return EXIT_OK
    if not args.json:
        print(f"rejected: {out.reason_tag}")
    return EXIT_REJECT


def cmd_verify(args) -> int:
    g = _load(args)
    seq = read_sequence(args.sequence)
    try:
        rep = verify_sequence(g, seq, args.width)
    except SequenceError as exc:
        print(f"error: malformed sequence: {exc}", file=sys.stderr)
        return EXIT_INPUT
    d = seq.claimed_width if args.width is None else args.width
    if rep.ok:
        print(f"ok: width {rep.max_red_degree} <= {d}")
        return EXIT_OK
    if not rep.complete and rep.failed_step is None:
        print(f"fail: sequence is partial ({len(seq.steps)} of {max(g.n - 1, 0)} steps)")
    else:
        print(f"fail: step {rep.failed_step} gives vertex {rep.failed_vertex} red degree above {d}")
    return EXIT_REJECT


def cmd_oracle(args) -> int:
    g = _load(args)
    try:
        value = brute_force_tww(g, budget=args.budget, max_n=args.max_n)
    except (OracleBudgetExceeded, ValueError) as exc:
        print(f"inconclusive: {exc}")
        return EXIT_REJECT
    print(value)
    return EXIT_OK


def cmd_dh(args) -> int:
    g = _load(args)
    res = classify_dh_twin_width(g)
    if args.json:
        report = {"n": g.n, "m": g.m, "classification": res.label}
        if res.is_dh:
            report["components"] = res.components
        _emit_json(report)
    else:
        print(res.label)
    if not res.is_dh:
        return EXIT_REJECT
    if args.cert:
        write_sequence(res.sequence, args.cert)
    if args.tree:
        trees = []
        for comp in connected_components(g):
            h, verts, _ = induced_subgraph(g, comp)
            t = split_tree_dh(h, dh_elimination(h))
            trees.append({"vertices": verts, "tree": t.to_json()})
        Path(args.tree).write_text(json.dumps(trees, sort_keys=True) + "\n")
    return EXIT_OK


SLOT = 40
TOP, BOTTOM = 30, 130


def render_svg(r) -> str:
    n = r.n
    width, height = SLOT * (n + 1), BOTTOM + 30
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">',
        f'<line x1="{SLOT // 2}" y1="{TOP}" x2="{width - SLOT // 2}" y2="{TOP}" stroke="black"/>',
        f'<line x1="{SLOT // 2}" y1="{BOTTOM}" x2="{width - SLOT // 2}" y2="{BOTTOM}" stroke="black"/>',
    ]
    for seg in diagram_layout(r):
        x1, x2 = SLOT * seg.top_x, SLOT * seg.bottom_x
        parts.append(f'<line class="segment" data-vertex="{seg.vertex}" x1="{x1}" y1="{TOP}" x2="{x2}" y2="{BOTTOM}" stroke="steelblue"/>')
        parts.append(f'<text x="{x1}" y="{TOP - 8}" text-anchor="middle" font-size="12">{seg.vertex}</text>')
        parts.append(f'<text x="{x2}" y="{BOTTOM + 20}" text-anchor="middle" font-size="12">{seg.vertex}</text>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def render_text(r) -> str:
    top, bottom = r.sigma_order, r.tau_order
    w = max((len(str(v)) for v in top), default=1)
    row = lambda vs: " ".join(str(v).rjust(w) for v in vs)
    return f"sigma | {row(top)}\ntau   | {row(bottom)}\n"


def cmd_diagram(args) -> int:
    g = _load(args)
    r = compute_realiser(g)
    if r is None:
        print("refused: not a permutation graph", file=sys.stderr)
        return EXIT_REJECT
    text = render_svg(r) if args.format == "svg" else render_text(r)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _bench_task(command: str):
    if command == "recognize":
        return recognize
    if command == "dh":
        return classify_dh_twin_width
    if command == "realiser":
        return compute_realiser
    if command == "decompose":
        return modular_decomposition
    raise ValueError(command)


def bench_rows(generator: str, sizes, command: str = "recognize", repeat: int = 3, seed: int = 0):
    """``(n, m, ms)`` per size; ``ms`` is the best of ``repeat`` runs."""
    make = GENERATORS[generator]
    task = _bench_task(command)
    rows = []
    for n in sizes:
        g = make(n, seed)
        best = float("inf")
        for _ in range(repeat):
            t0 = time.perf_counter()
            out = task(g)
            best = min(best, time.perf_counter() - t0)
        if command == "recognize" and generator in ("caterpillar", "random-tww1") and not out.accepted:
            raise RuntimeError(f"generator {generator} produced a rejected instance at n={n}")
        rows.append((n, g.m, best * 1000.0))
    return rows


def cmd_bench(args) -> int:
    sizes = []
    for tok in args.sizes:
        for part in tok.split(","):
            if part:
                sizes.append(int(float(part)))
    print("n,m,ms")
    for n, m, ms in bench_rows(args.generator, sizes, args.bench_command, args.repeat, args.seed):
        print(f"{n},{m},{ms:.3f}", flush=True)
    return EXIT_OK


def cmd_decompose(args) -> int:
    g = _load(args)
    t = modular_decomposition(g)
    if args.json:
        _emit_json(t.to_json())
        return EXIT_OK

    stack = [(t, 0)]
    while stack:
        node, depth = stack.pop()
        pad = "  " * depth
        if node.is_leaf:
            print(f"{pad}{node.vertex}")
            continue
        print(f"{pad}{node.kind} ({node.size} vertices)")
        stack.extend((c, depth + 1) for c in reversed(node.children))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="tww", description="Twin-width at most one: recognition and related tools.")
    sub = p.add_subparsers(dest="command", required=True)

    def graph_arg(sp):
        sp.add_argument("graph", help="graph file (edge list or graph6)")
        sp.add_argument("--input-format", dest="format_in", choices=["edge-list", "graph6"], default=None)

    sp = sub.add_parser("recognize", help="decide twin-width <= 1 and emit a sequence")
    graph_arg(sp)
    sp.add_argument("--emit", metavar="SEQ.json", help="write the sequence file here")
    sp.add_argument("--json", action="store_true", help="print a JSON report")
    sp.add_argument("--seed", type=int, default=None, help="randomise peel tie-breaks")
    sp.set_defaults(func=cmd_recognize)

    sp = sub.add_parser("verify", help="check a sequence file against a graph")
    graph_arg(sp)
    sp.add_argument("sequence")
    sp.add_argument("--width", type=int, default=None, help="default: the width claimed in the file")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("oracle", help="exact twin-width of a small graph")
    graph_arg(sp)
    sp.add_argument("--max-n", type=int, default=None)
    sp.add_argument("--budget", type=int, default=None, help="cap on explored states")
    sp.set_defaults(func=cmd_oracle)

    sp = sub.add_parser("dh", help="classify a distance-hereditary graph")
    graph_arg(sp)
    sp.add_argument("--cert", metavar="SEQ.json", help="write the certificate sequence")
    sp.add_argument("--tree", metavar="TREE.json", help="write the split trees")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_dh)

    sp = sub.add_parser("diagram", help="draw a permutation diagram")
    graph_arg(sp)
    sp.add_argument("--format", choices=["svg", "text"], default="text")
    sp.add_argument("--out", default=None)
    sp.set_defaults(func=cmd_diagram)

    sp = sub.add_parser("bench", help="time a command on generated graphs")
    sp.add_argument("generator", choices=sorted(GENERATORS))
    sp.add_argument("sizes", nargs="+", help="sizes, space or comma separated")
    sp.add_argument("--command", dest="bench_command", choices=["recognize", "dh", "realiser", "decompose"], default="recognize")
    sp.add_argument("--repeat", type=int, default=3)
    sp.add_argument("--seed", type=int, default=0)
    sp.set_defaults(func=cmd_bench)

    sp = sub.add_parser("decompose", help="print the modular decomposition tree")
    graph_arg(sp)
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_decompose)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (SequenceError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
