"""Hypothesis strategies for graphs, grammars and set-valued matrices."""
from hypothesis import strategies as st

from cfpq.grammar import CnfGrammar, Grammar, N, T
from cfpq.graph import Graph

LABELS = ("a", "b", "c")


@st.composite
def graphs(draw, max_nodes=12, max_edges=40):
    n = draw(st.integers(1, max_nodes))
    node = st.integers(0, n - 1).map(str)
    edges = draw(st.lists(st.tuples(node, st.sampled_from(LABELS), node), max_size=max_edges))
    return Graph.from_edges(edges)


@st.composite
def cnf_grammars(draw, max_nonterms=4, max_binary=8, max_terminal=4):
    k = draw(st.integers(1, max_nonterms))
    idx = st.integers(0, k - 1)
    binary = draw(st.lists(st.tuples(idx, idx, idx), max_size=max_binary))
    terminal = draw(st.lists(st.tuples(idx, st.sampled_from(LABELS)), min_size=1, max_size=max_terminal))
    return CnfGrammar.build([f"N{i}" for i in range(k)], binary, terminal)


@st.composite
def raw_grammars(draw, max_nonterms=5, max_rules=8, max_rhs=4):
    k = draw(st.integers(1, max_nonterms))
    names = [f"N{i}" for i in range(k)]
    sym = st.one_of(st.sampled_from(LABELS).map(T), st.sampled_from(names).map(N))
    rules = draw(st.lists(st.tuples(st.sampled_from(names), st.lists(sym, min_size=1, max_size=max_rhs)),
                          min_size=1, max_size=max_rules))
    g = Grammar.from_rules(rules)
    missing = tuple(n for n in names if n not in g.nonterminals)
    return Grammar(g.nonterminals + missing, g.terminals, g.productions)


@st.composite
def set_matrices(draw, nonterm_count, max_dim=6):
    n = draw(st.integers(1, max_dim))
    cell = st.frozensets(st.integers(0, nonterm_count - 1), max_size=nonterm_count)
    return [[draw(cell) for _ in range(n)] for _ in range(n)]


@st.composite
def bool_pairs(draw, n):
    return draw(st.sets(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1))))
