"""Random graphs, grammars and set-valued matrices for cross-checks and benchmarks."""
from __future__ import annotations

import random

from .grammar import CnfGrammar, Grammar, N, T
from .graph import Graph

LABELS = ("a", "b", "c")


def random_graph(rng: random.Random, max_nodes: int = 12, max_edges: int = 40, labels=LABELS) -> Graph:
    n = rng.randint(1, max_nodes)
    # at least n edges (when allowed) so most instances are not trivially sparse
    edges = [(str(rng.randrange(n)), rng.choice(labels), str(rng.randrange(n)))
             for _ in range(rng.randint(min(n, max_edges), max_edges))]
    return Graph.from_edges(edges)


def random_cnf(rng: random.Random, max_nonterms: int = 4, max_binary: int = 8, max_terminal: int = 4,
               labels=LABELS) -> CnfGrammar:
    k = rng.randint(1, max_nonterms)
    binary = [(rng.randrange(k), rng.randrange(k), rng.randrange(k))
              for _ in range(rng.randint(min(1, max_binary), max_binary))]
    terminal = [(rng.randrange(k), rng.choice(labels)) for _ in range(rng.randint(1, max_terminal))]
    return CnfGrammar.build([f"N{i}" for i in range(k)], binary, terminal)


def random_grammar(rng: random.Random, max_nonterms: int = 5, max_rules: int = 8, max_rhs: int = 4,
                   labels=LABELS) -> Grammar:
    k = rng.randint(1, max_nonterms)
    names = [f"N{i}" for i in range(k)]
    rules = []
    for _ in range(rng.randint(1, max_rules)):
        rhs = []
        for _ in range(rng.randint(1, max_rhs)):
            rhs.append(T(rng.choice(labels)) if rng.random() < 0.5 else N(rng.choice(names)))
        rules.append((rng.choice(names), tuple(rhs)))
    g = Grammar.from_rules(rules)
    missing = tuple(n for n in names if n not in g.nonterminals)
    return Grammar(g.nonterminals + missing, g.terminals, g.productions)


def random_set_matrix(rng: random.Random, n: int, nonterm_count: int, density: float = 0.2):
    return [[frozenset(a for a in range(nonterm_count) if rng.random() < density) for _ in range(n)]
            for _ in range(n)]
