#!/usr/bin/env python3
"""Time the closure on synthetic class hierarchies of growing size.

Each graph is a random forest of ``subClassOf`` edges plus ``type`` edges from
instance nodes to classes, with inverse edges added the same way the triple
loader does.  Both matrix representations are timed and checked to agree.
"""
import argparse
import csv
import random
import sys
import time
from dataclasses import dataclass

from cfpq import example
from cfpq.engine import EngineConfig, closure, init_matrix
from cfpq.grammar import parse_grammar, to_cnf
from cfpq.graph import load_triples


@dataclass(frozen=True)
class ScalingConfig:
    sizes: tuple = (50, 100, 200, 400)
    instance_ratio: float = 0.5
    seed: int = 7
    query: str = "query1.txt"
    start: str = "S"


def hierarchy(n_classes: int, n_instances: int, rng: random.Random):
    lines = [f"c{k} subClassOf c{rng.randrange(k)}" for k in range(1, n_classes)]
    lines += [f"i{k} type c{rng.randrange(n_classes)}" for k in range(n_instances)]
    return load_triples("\n".join(lines), add_inverses=True)


def run(cfg: ScalingConfig, out=sys.stdout):
    cnf = to_cnf(parse_grammar(example.data_text(cfg.query)))
    start = cnf.index(cfg.start)
    rng = random.Random(cfg.seed)
    writer = csv.writer(out)
    writer.writerow(["classes", "nodes", "edges", "results", "iterations", "dense_ms", "sparse_ms"])
    for size in cfg.sizes:
        g = hierarchy(size, int(size * cfg.instance_ratio), rng)
        timings, answers = {}, {}
        for rep in ("dense", "sparse"):
            t0 = time.perf_counter()
            res = closure(init_matrix(g, cnf, EngineConfig(rep)), cnf)
            timings[rep] = (time.perf_counter() - t0) * 1000
            answers[rep] = set(res.matrices[start].pairs())
        if answers["dense"] != answers["sparse"]:
            raise AssertionError(f"representations disagree at size {size}")
        writer.writerow([size, g.node_count, len(g.edges), len(answers["dense"]), res.iterations,
                         f"{timings['dense']:.1f}", f"{timings['sparse']:.1f}"])


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=list(ScalingConfig.sizes))
    ap.add_argument("--seed", type=int, default=ScalingConfig.seed)
    ap.add_argument("--query", default=ScalingConfig.query, choices=["query1.txt", "query2.txt"])
    args = ap.parse_args()
    run(ScalingConfig(sizes=tuple(args.sizes), seed=args.seed, query=args.query))


if __name__ == "__main__":
    main()
