"""Command line: ``cfpq query``, ``cfpq bench`` and ``cfpq selftest``."""
from __future__ import annotations

import argparse
import csv
import json
import statistics
import sys
import time
from pathlib import Path as FsPath

from . import example
from .bitmatrix import AUTO, DENSE, SPARSE, grammar_product
from .engine import EngineConfig, UnknownNonterminal, closure, evaluate, init_matrix, relations, start_index
from .grammar import GrammarError, parse_grammar, to_cnf
from .graph import GraphFormatError, load_edge_list, load_triples
from .singlepath import single_paths

EXIT_OK, EXIT_INPUT, EXIT_START = 0, 1, 2
BENCH_HEADER = ["name", "nodes", "edges", "results", "median_ms"]


class InputError(Exception):
    pass


def _read(path: str) -> str:
    try:
        return FsPath(path).read_text(encoding="utf-8")
    except OSError as e:
        raise InputError(f"cannot read {path}: {e.strerror or e}") from e


def _load_graph(args):
    if args.graph:
        return load_edge_list(_read(args.graph))
    return load_triples(_read(args.triples), args.add_inverses)


def cmd_query(args) -> int:
    g = _load_graph(args)
    raw = parse_grammar(_read(args.grammar))
    cnf = to_cnf(raw)
    a = start_index(raw, cnf, args.start)
    names = g.node_names
    config = EngineConfig(args.representation)

    if args.semantics == "relational":
        pairs = sorted(evaluate(g, cnf, config)[a])
        if args.json:
            text = json.dumps({"start": args.start, "semantics": args.semantics,
                               "pairs": [[names[i], names[j]] for i, j in pairs]}, indent=2) + "\n"
        else:
            text = "".join(f"{names[i]}\t{names[j]}\n" for i, j in pairs)
    else:
        paths = single_paths(g, cnf, a)
        if args.json:
            text = json.dumps({"start": args.start, "semantics": args.semantics, "paths": [
                {"src": names[i], "dst": names[j], "length": len(p),
                 "nodes": [names[v] for v in p.nodes], "labels": list(p.labels)}
                for (i, j), p in sorted(paths.items())]}, indent=2) + "\n"
        else:
            text = "".join(f"{names[i]}\t{names[j]}\t{len(p)}\t{','.join(p.labels)}\n"
                           for (i, j), p in sorted(paths.items()))

    if args.output == "-":
        sys.stdout.write(text)
    else:
        try:
            FsPath(args.output).write_text(text, encoding="utf-8")
        except OSError as e:
            raise InputError(f"cannot write {args.output}: {e.strerror or e}") from e
    return EXIT_OK


def bench_rows(triples_dir, grammar_text: str, start: str, repeat: int = 1, add_inverses: bool = True,
               representation: str = AUTO, notes=None):
    """Yield one CSV row per triple file in ``triples_dir`` (sorted by name)."""
    raw = parse_grammar(grammar_text)
    cnf = to_cnf(raw)
    a = start_index(raw, cnf, start)
    config = EngineConfig(representation)
    for path in sorted(p for p in FsPath(triples_dir).iterdir() if p.is_file()):
        g = load_triples(_read(str(path)), add_inverses)
        if g.duplicates and notes is not None:
            notes.write(f"note: {path.name}: {g.duplicates} repeated triple(s) collapsed\n")
        times = []
        results = None
        for _ in range(max(repeat, 1)):
            t0 = time.perf_counter()
            results = len(evaluate(g, cnf, config)[a])
            times.append((time.perf_counter() - t0) * 1000)
        yield [path.stem, g.node_count, len(g.edges), results, f"{statistics.median(times):.1f}"]


def cmd_bench(args) -> int:
    if not FsPath(args.triples_dir).is_dir():
        raise InputError(f"not a directory: {args.triples_dir}")
    out = csv.writer(sys.stdout, lineterminator="\n")
    out.writerow(BENCH_HEADER)
    for row in bench_rows(args.triples_dir, _read(args.grammar), args.start, args.repeat,
                          args.add_inverses, args.representation, notes=sys.stderr):
        out.writerow(row)
        sys.stdout.flush()
    return EXIT_OK


def _fmt_cells(cells: dict, n: int) -> str:
    lines = []
    for i in range(n):
        row = []
        for j in range(n):
            cell = cells.get((i, j), set())
            row.append("{" + ", ".join(sorted(cell, key=lambda s: (len(s), s))) + "}" if cell else "{}")
        lines.append("  " + "  ".join(f"{c:<16}" for c in row).rstrip())
    return "\n".join(lines)


def selftest(verbose: bool = False, corrupt: bool = False, out=None) -> bool:
    """Run the embedded example end to end and report each check."""
    out = out or sys.stdout
    g, cnf = example.graph(), example.cnf_grammar()
    expected = [dict(s) for s in example.EXPECTED_STATES]
    if corrupt:
        expected[3] = {**expected[3], (2, 1): {"S"}}
    results = []

    def check(label, ok):
        results.append(ok)
        out.write(f"{'PASS' if ok else 'FAIL'}  {label}\n")

    t0 = init_matrix(g, cnf)
    check("initial matrix T0", example.named_cells(t0, cnf) == expected[0])
    first = example.named_cells(grammar_product(cnf, t0), cnf)
    check("first product T0 x T0", first == example.EXPECTED_FIRST_PRODUCT)

    res = closure(t0, cnf, keep_history=True)
    states = [example.named_cells(t, cnf) for t in res.history]
    for k in range(1, len(expected)):
        got = states[k] if k < len(states) else None
        check(f"iteration state T{k}", got == expected[k])
        if verbose and got is not None:
            prev = states[k - 1]
            new = {pos: cells - prev.get(pos, set()) for pos, cells in got.items()}
            new = {pos: c for pos, c in new.items() if c}
            out.write(f"T{k}:\n{_fmt_cells(got, g.node_count)}\n")
            out.write("  new: " + ", ".join(f"({i},{j}) {{{', '.join(sorted(c))}}}"
                                            for (i, j), c in sorted(new.items())) + "\n")
    check(f"fixpoint at iteration {res.iterations} (T{res.iterations} == T{res.iterations - 1})",
          res.iterations == example.EXPECTED_ITERATIONS and states[-1] == states[-2])
    rel = relations(res.matrices, cnf).as_dict()
    check("relations for all nonterminals", rel == example.EXPECTED_RELATIONS)
    ok = all(results)
    out.write(("PASS" if ok else "FAIL") + f"  selftest ({sum(results)}/{len(results)} checks)\n")
    return ok


def cmd_selftest(args) -> int:
    return EXIT_OK if selftest(args.verbose, args.corrupt) else EXIT_INPUT


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cfpq", description="Context-free path queries over labeled graphs.")
    sub = parser.add_subparsers(dest="command", required=True)

    q = sub.add_parser("query", help="evaluate a grammar query on a graph")
    src = q.add_mutually_exclusive_group(required=True)
    src.add_argument("--graph", help="edge list file: 'src label dst' per line")
    src.add_argument("--triples", help="triple file: 'o p s' per line")
    q.add_argument("--add-inverses", action="store_true", help="also add (s, p_r, o) for each triple")
    q.add_argument("--grammar", required=True)
    q.add_argument("--start", required=True)
    q.add_argument("--semantics", choices=["relational", "single-path"], default="relational")
    q.add_argument("--output", default="-")
    q.add_argument("--json", action="store_true")
    q.add_argument("--representation", choices=[AUTO, DENSE, SPARSE], default=AUTO)
    q.set_defaults(func=cmd_query)

    b = sub.add_parser("bench", help="run a query over every triple file in a directory")
    b.add_argument("--triples-dir", required=True)
    b.add_argument("--grammar", required=True)
    b.add_argument("--start", default="S")
    b.add_argument("--repeat", type=int, default=1)
    b.add_argument("--no-inverses", dest="add_inverses", action="store_false")
    b.add_argument("--representation", choices=[AUTO, DENSE, SPARSE], default=AUTO)
    b.set_defaults(func=cmd_bench)

    s = sub.add_parser("selftest", help="check the built-in worked example")
    s.add_argument("--verbose", action="store_true")
    s.add_argument("--corrupt", action="store_true", help=argparse.SUPPRESS)
    s.set_defaults(func=cmd_selftest)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except UnknownNonterminal as e:
        print(f"cfpq: unknown start nonterminal {e.args[0]!r}", file=sys.stderr)
        return EXIT_START
    except (InputError, GrammarError, GraphFormatError) as e:
        print(f"cfpq: {e}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
