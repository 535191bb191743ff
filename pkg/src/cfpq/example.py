"""The three-node same-generation example with its known closure states.

``EXPECTED_STATES[k]`` is the matrix after ``k`` loop iterations, written as
``{(i, j): {nonterminal names}}`` with empty cells omitted.
"""
from __future__ import annotations

from importlib.resources import files

from .grammar import CnfGrammar, Grammar, parse_grammar, to_cnf
from .graph import Graph, load_edge_list


def data_text(name: str) -> str:
    return files("cfpq.data").joinpath(name).read_text(encoding="utf-8")


def graph() -> Graph:
    return load_edge_list(data_text("example_graph.txt"))


def grammar() -> Grammar:
    """The four-rule same-generation grammar (identical to query 1)."""
    return parse_grammar(data_text("query1.txt"))


def cnf_grammar() -> CnfGrammar:
    return to_cnf(parse_grammar(data_text("example_cnf.txt")))


_T0 = {(0, 0): {"S1"}, (0, 1): {"S3"}, (1, 2): {"S3"}, (2, 0): {"S2"}, (2, 2): {"S4"}}
_T1 = {**_T0, (1, 2): {"S3", "S"}}
_T2 = {**_T1, (1, 0): {"S5"}, (1, 2): {"S3", "S", "S6"}}
_T3 = {**_T2, (0, 2): {"S"}}
_T4 = {**_T3, (0, 0): {"S1", "S5"}, (0, 2): {"S", "S6"}}
_T5 = {**_T4, (0, 0): {"S1", "S5", "S"}}

EXPECTED_STATES = [_T0, _T1, _T2, _T3, _T4, _T5]
EXPECTED_ITERATIONS = 6
# T0 x T0 has a single nonempty cell
EXPECTED_FIRST_PRODUCT = {(1, 2): {"S"}}

EXPECTED_RELATIONS = {
    "S": {(0, 0), (0, 2), (1, 2)},
    "S1": {(0, 0)},
    "S2": {(2, 0)},
    "S3": {(0, 1), (1, 2)},
    "S4": {(2, 2)},
    "S5": {(0, 0), (1, 0)},
    "S6": {(0, 2), (1, 2)},
}


def named_cells(t, cnf: CnfGrammar) -> dict[tuple[int, int], set[str]]:
    """Nonempty cells of a ``NontermMatrixSet`` keyed by position, with names."""
    out: dict[tuple[int, int], set[str]] = {}
    for a, m in enumerate(t.matrices):
        for i, j in m.pairs():
            out.setdefault((i, j), set()).add(cnf.nonterm_names[a])
    return out
