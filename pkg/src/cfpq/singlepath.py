"""Single-path CFPQ: closure with path lengths, then path reconstruction.

Every cell ``(A, i, j)`` keeps the length it was first discovered with.
Within an iteration all products read the snapshot taken at its start and the
scan order is fixed (binary rules in grammar order, then ``i``, the
intermediate node ``k`` and ``j`` ascending), so the annotation is
deterministic.  Lengths are not minimal in general.
"""
from __future__ import annotations

from collections import defaultdict

from .engine import start_index
from .grammar import CnfGrammar, Grammar, to_cnf
from .graph import Graph, Path

MAX_LENGTH = 2**63 - 1


class LengthMatrixSet:
    """Per-nonterminal sparse map ``(i, j) -> length``."""

    def __init__(self, nonterm_count: int, n: int):
        self.n = n
        self.cells: list[dict[tuple[int, int], int]] = [{} for _ in range(nonterm_count)]

    @property
    def nonterm_count(self) -> int:
        return len(self.cells)

    def get(self, a: int, i: int, j: int) -> int | None:
        return self.cells[a].get((i, j))

    def set_once(self, a: int, i: int, j: int, length: int) -> bool:
        """Record a length unless the cell already has one."""
        cell = self.cells[a]
        if (i, j) in cell:
            return False
        assert 0 < length <= MAX_LENGTH
        cell[i, j] = length
        return True

    def occupied(self, a: int) -> set[tuple[int, int]]:
        return set(self.cells[a])

    def nnz(self) -> int:
        return sum(len(c) for c in self.cells)

    def copy(self) -> "LengthMatrixSet":
        out = LengthMatrixSet(self.nonterm_count, self.n)
        out.cells = [dict(c) for c in self.cells]
        return out

    def __eq__(self, other):
        if not isinstance(other, LengthMatrixSet):
            return NotImplemented
        return self.n == other.n and self.cells == other.cells

    __hash__ = None


def init_lengths(g: Graph, cnf: CnfGrammar) -> LengthMatrixSet:
    t = LengthMatrixSet(cnf.nonterm_count, g.node_count)
    for src, label, dst in g.edges:
        for a in cnf.terminal_rules.get(label, ()):
            t.set_once(a, src, dst, 1)
    return t


def closure_lengths(t: LengthMatrixSet, cnf: CnfGrammar) -> LengthMatrixSet:
    cur = t.copy()
    bound = cur.n * cur.n * cur.nonterm_count
    iterations = 0
    while True:
        iterations += 1
        assert iterations <= bound + 1
        snap = [sorted(c.items()) for c in cur.cells]
        rows = []
        for items in snap:
            by_row = defaultdict(list)
            for (k, j), length in items:
                by_row[k].append((j, length))
            rows.append(by_row)
        changed = False
        for a, b, c in cnf.binary_rules:
            right = rows[c]
            if not right:
                continue
            for (i, k), lb in snap[b]:
                for j, lc in right.get(k, ()):
                    changed |= cur.set_once(a, i, j, lb + lc)
        if not changed:
            return cur


def extract_path(t: LengthMatrixSet, g: Graph, cnf: CnfGrammar, a: int, i: int, j: int) -> Path:
    """Rebuild a path of exactly the recorded length for cell ``(a, i, j)``.

    Splits are searched in closure scan order (rules, then middle node), so
    the first consistent split is the one that produced the entry.
    """
    if t.get(a, i, j) is None:
        raise ValueError(f"no entry for nonterminal {cnf.nonterm_names[a]!r} at ({i}, {j})")
    edges = []
    # explicit stack: derivations on large graphs get deeper than the recursion limit
    stack = [(a, i, j, t.get(a, i, j))]
    while stack:
        x, s, d, length = stack.pop()
        if length == 1:
            label = next(lab for lab in g.labels_between(s, d) if x in cnf.terminal_rules.get(lab, ()))
            edges.append((s, label, d))
            continue
        for lhs, b, c in cnf.binary_rules:
            if lhs != x:
                continue
            found = False
            for r in range(t.n):
                lb = t.get(b, s, r)
                if lb is None or lb >= length:
                    continue
                if t.get(c, r, d) == length - lb:
                    stack.append((c, r, d, length - lb))
                    stack.append((b, s, r, lb))
                    found = True
                    break
            if found:
                break
        else:
            raise AssertionError(f"no split realizes length {length} for {cnf.nonterm_names[x]!r} at ({s}, {d})")
    return Path(tuple(edges))


def single_paths(g: Graph, cnf: CnfGrammar, a: int) -> dict[tuple[int, int], Path]:
    t = closure_lengths(init_lengths(g, cnf), cnf)
    return {(i, j): extract_path(t, g, cnf, a, i, j) for i, j in sorted(t.occupied(a))}


def query_single_path(g: Graph, raw: Grammar, start: str) -> dict[tuple[int, int], Path]:
    cnf = to_cnf(raw)
    return single_paths(g, cnf, start_index(raw, cnf, start))
