"""Slow reference implementations, kept free of any matrix code."""
from __future__ import annotations

import random
from collections import defaultdict, deque

from .grammar import CnfGrammar
from .graph import Graph

SetMatrix = list[list[frozenset[int]]]


def naive_relations(g: Graph, cnf: CnfGrammar, order: str = "fifo", seed: int = 0) -> list[set[tuple[int, int]]]:
    """Context-free relations by worklist saturation over explicit pair sets.

    ``order`` picks how the worklist is drained (``fifo``, ``lifo`` or
    ``random``); the result must not depend on it.
    """
    rel: list[set[tuple[int, int]]] = [set() for _ in range(cnf.nonterm_count)]
    # indexes: by source node and by target node, per nonterminal
    out_of: list[dict[int, set[int]]] = [defaultdict(set) for _ in range(cnf.nonterm_count)]
    into: list[dict[int, set[int]]] = [defaultdict(set) for _ in range(cnf.nonterm_count)]
    as_left = defaultdict(list)  # B -> [(A, C)]
    as_right = defaultdict(list)  # C -> [(A, B)]
    for a, b, c in cnf.binary_rules:
        as_left[b].append((a, c))
        as_right[c].append((a, b))

    work: list = []
    rng = random.Random(seed)

    def add(a, i, j):
        if (i, j) not in rel[a]:
            rel[a].add((i, j))
            out_of[a][i].add(j)
            into[a][j].add(i)
            work.append((a, i, j))

    for src, label, dst in sorted(g.edges):
        for a in sorted(cnf.terminal_rules.get(label, ())):
            add(a, src, dst)

    queue = deque()
    while work or queue:
        queue.extend(work)
        work.clear()
        if order == "fifo":
            b, i, r = queue.popleft()
        elif order == "lifo":
            b, i, r = queue.pop()
        elif order == "random":
            k = rng.randrange(len(queue))
            queue.rotate(-k)
            b, i, r = queue.popleft()
        else:
            raise ValueError(f"unknown order {order!r}")
        # new fact B(i, r) as left operand
        for a, c in as_left[b]:
            for j in list(out_of[c][r]):
                add(a, i, j)
        # as right operand: C(i, r) with B(x, i)
        for a, bb in as_right[b]:
            for x in list(into[bb][i]):
                add(a, x, r)
    return rel


def set_product(cnf: CnfGrammar, left: frozenset[int], right: frozenset[int]) -> frozenset[int]:
    return frozenset(a for a, b, c in cnf.binary_rules if b in left and c in right)


def set_matmul(cnf: CnfGrammar, x: SetMatrix, y: SetMatrix) -> SetMatrix:
    n = len(x)
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            acc = set()
            for k in range(n):
                if x[i][k] and y[k][j]:
                    acc |= set_product(cnf, x[i][k], y[k][j])
            row.append(frozenset(acc))
        out.append(row)
    return out


def set_union(x: SetMatrix, y: SetMatrix) -> SetMatrix:
    return [[a | b for a, b in zip(rx, ry)] for rx, ry in zip(x, y)]


def is_empty(x: SetMatrix) -> bool:
    return not any(c for row in x for c in row)


def valiant_closure(a: SetMatrix, cnf: CnfGrammar, with_terms: bool = False):
    """Closure as the union of the terms ``a(1) = a``,
    ``a(i) = U_{j<i} a(j) x a(i-j)``.

    Stops at the first even ``m`` with ``U_{k<=m} == U_{k<=m/2}``: the union of
    the first ``m/2`` terms is then closed under the product (every product of
    two of its terms lies in a term of index ``<= m``), so no later term can
    add anything.  With ``with_terms`` the term count ``m/2`` is returned as
    well.
    """
    n = len(a)
    terms = [None, a]
    unions = [None, a]
    m = 1
    while True:
        m += 1
        term = [[frozenset()] * n for _ in range(n)]
        for j in range(1, m):
            if is_empty(terms[j]) or is_empty(terms[m - j]):
                continue
            term = set_union(term, set_matmul(cnf, terms[j], terms[m - j]))
        terms.append(term)
        unions.append(set_union(unions[-1], term))
        if m % 2 == 0 and unions[m] == unions[m // 2]:
            return (unions[m], m // 2) if with_terms else unions[m]
