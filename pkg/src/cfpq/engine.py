"""Relational CFPQ: build the initial matrix, iterate ``T <- T | T x T`` to a
fixpoint, read off the node pairs per nonterminal."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple

from .bitmatrix import AUTO, DEFAULT_DENSE_LIMIT, NontermMatrixSet, grammar_product, matrix_class
from .grammar import CnfGrammar, Grammar, to_cnf
from .graph import Graph


class UnknownNonterminal(KeyError):
    pass


@dataclass(frozen=True)
class EngineConfig:
    representation: str = AUTO  # "dense", "sparse" or "auto"
    dense_limit: int = DEFAULT_DENSE_LIMIT


class ClosureResult(NamedTuple):
    matrices: NontermMatrixSet
    iterations: int
    # entries added by the loop, on top of the initial matrix
    flips: int
    # T_0, T_1, ... T_k when requested (T_k == T_{k-1})
    history: list[NontermMatrixSet] | None


@dataclass
class RelationSet:
    names: tuple[str, ...]
    pairs: list[set[tuple[int, int]]] = field(repr=False)

    def __getitem__(self, key: int | str) -> set[tuple[int, int]]:
        if isinstance(key, str):
            key = self.names.index(key)
        return self.pairs[key]

    def as_dict(self) -> dict[str, set[tuple[int, int]]]:
        return dict(zip(self.names, self.pairs))

    def total(self) -> int:
        return sum(len(p) for p in self.pairs)


def init_matrix(g: Graph, cnf: CnfGrammar, config: EngineConfig = EngineConfig()) -> NontermMatrixSet:
    matrix_cls = matrix_class(config.representation, g.node_count, config.dense_limit)
    per = [[] for _ in range(cnf.nonterm_count)]
    for src, label, dst in g.edges:
        for a in cnf.terminal_rules.get(label, ()):
            per[a].append((src, dst))
    return NontermMatrixSet([matrix_cls.from_pairs(g.node_count, p) for p in per])


def closure(t: NontermMatrixSet, cnf: CnfGrammar, keep_history: bool = False) -> ClosureResult:
    """Least fixpoint of ``T -> T | (T x T)`` above ``t``; ``t`` is left untouched.

    Each iteration multiplies a snapshot of the matrix taken at the start of
    the iteration.  ``iterations`` counts loop bodies including the final one
    that changed nothing.
    """
    cur = t.copy()
    start = cur.nnz()
    bound = cur.n * cur.n * cur.nonterm_count
    history = [cur.copy()] if keep_history else None
    iterations = 0
    while True:
        iterations += 1
        assert iterations <= bound + 1, "closure exceeded the |V|^2 |N| + 1 iteration bound"
        changed = cur.union_inplace(grammar_product(cnf, cur))
        if history is not None:
            history.append(cur.copy())
        if not changed:
            break
    flips = cur.nnz() - start
    assert cur.nnz() <= bound
    return ClosureResult(cur, iterations, flips, history)


def relations(t: NontermMatrixSet, cnf: CnfGrammar) -> RelationSet:
    return RelationSet(cnf.nonterm_names, [set(m.pairs()) for m in t.matrices])


def evaluate(g: Graph, cnf: CnfGrammar, config: EngineConfig = EngineConfig()) -> RelationSet:
    """All context-free relations of ``g`` for a CNF grammar."""
    return relations(closure(init_matrix(g, cnf, config), cnf).matrices, cnf)


def start_index(raw: Grammar, cnf: CnfGrammar, start: str) -> int:
    if start not in raw.nonterminals:
        raise UnknownNonterminal(start)
    return cnf.index(start)


def query_relational(g: Graph, raw: Grammar, start: str, config: EngineConfig = EngineConfig()) -> set[tuple[int, int]]:
    cnf = to_cnf(raw)
    a = start_index(raw, cnf, start)
    return evaluate(g, cnf, config)[a]
