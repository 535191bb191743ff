"""Square Boolean matrices and per-nonterminal matrix bundles.

Two interchangeable representations:

* ``DenseBitMatrix``: one Python ``int`` per row, bit ``j`` set iff entry
  ``(i, j)`` is true.  Multiplication ORs the rows of ``b`` selected by the
  set bits of each row of ``a``, so the inner loop runs on machine words.
* ``SparseBitMatrix``: a CSR matrix from ``scipy.sparse``.

Everything above this module talks to ``BitMatrix`` only.
"""
from __future__ import annotations

from abc import ABC, abstractmethod
from typing import Iterable, Iterator

import numpy as np
import scipy.sparse as sp

DENSE = "dense"
SPARSE = "sparse"
AUTO = "auto"
DEFAULT_DENSE_LIMIT = 4096


class DimensionError(ValueError):
    pass


def _check_same(a: "BitMatrix", b: "BitMatrix"):
    if a.n != b.n:
        raise DimensionError(f"dimension mismatch: {a.n} vs {b.n}")


class BitMatrix(ABC):
    n: int

    @classmethod
    @abstractmethod
    def zeros(cls, n: int) -> "BitMatrix": ...

    @classmethod
    def from_pairs(cls, n: int, pairs: Iterable[tuple[int, int]]) -> "BitMatrix":
        m = cls.zeros(n)
        m.set_many(pairs)
        return m

    @classmethod
    def identity(cls, n: int) -> "BitMatrix":
        return cls.from_pairs(n, ((i, i) for i in range(n)))

    @abstractmethod
    def get(self, i: int, j: int) -> bool: ...

    @abstractmethod
    def set_many(self, pairs: Iterable[tuple[int, int]]) -> None: ...

    @abstractmethod
    def pairs(self) -> Iterator[tuple[int, int]]:
        """Set entries in row-major order."""

    @abstractmethod
    def nnz(self) -> int: ...

    @abstractmethod
    def multiply(self, other: "BitMatrix") -> "BitMatrix": ...

    @abstractmethod
    def union_inplace(self, other: "BitMatrix") -> bool: ...

    @abstractmethod
    def copy(self) -> "BitMatrix": ...

    def set(self, i: int, j: int):
        self.set_many([(i, j)])

    def _check_index(self, i, j):
        if not (0 <= i < self.n and 0 <= j < self.n):
            raise IndexError(f"({i}, {j}) outside {self.n}x{self.n}")

    def __matmul__(self, other):
        return self.multiply(other)

    def __eq__(self, other):
        if not isinstance(other, BitMatrix):
            return NotImplemented
        return self.n == other.n and self.nnz() == other.nnz() and set(self.pairs()) == set(other.pairs())

    def __le__(self, other: "BitMatrix") -> bool:
        _check_same(self, other)
        return all(other.get(i, j) for i, j in self.pairs())

    __hash__ = None

    def __repr__(self):
        return f"{type(self).__name__}(n={self.n}, nnz={self.nnz()})"


class DenseBitMatrix(BitMatrix):
    __slots__ = ("n", "rows")

    def __init__(self, n: int, rows: list[int] | None = None):
        self.n = n
        self.rows = rows if rows is not None else [0] * n

    @classmethod
    def zeros(cls, n):
        return cls(n)

    def get(self, i, j):
        self._check_index(i, j)
        return bool(self.rows[i] >> j & 1)

    def set_many(self, pairs):
        for i, j in pairs:
            self._check_index(i, j)
            self.rows[i] |= 1 << j

    def pairs(self):
        for i, row in enumerate(self.rows):
            while row:
                low = row & -row
                yield i, low.bit_length() - 1
                row ^= low

    def nnz(self):
        return sum(row.bit_count() for row in self.rows)

    def multiply(self, other):
        _check_same(self, other)
        b = _as_dense(other).rows
        out = []
        for row in self.rows:
            acc = 0
            while row:
                low = row & -row
                acc |= b[low.bit_length() - 1]
                row ^= low
            out.append(acc)
        return DenseBitMatrix(self.n, out)

    def union_inplace(self, other):
        _check_same(self, other)
        src = _as_dense(other).rows
        rows = self.rows
        changed = False
        for i, s in enumerate(src):
            if s & ~rows[i]:
                rows[i] |= s
                changed = True
        return changed

    def copy(self):
        return DenseBitMatrix(self.n, list(self.rows))


class SparseBitMatrix(BitMatrix):
    """CSR-backed matrix; ``csr`` holds int8 ones with no explicit zeros."""

    __slots__ = ("n", "csr")

    def __init__(self, n: int, csr: sp.csr_array | None = None):
        self.n = n
        self.csr = csr if csr is not None else sp.csr_array((n, n), dtype=np.int8)

    @classmethod
    def zeros(cls, n):
        return cls(n)

    @staticmethod
    def _normalize(m) -> sp.csr_array:
        m = sp.csr_array(m)
        m.data = (m.data != 0).astype(np.int8)
        m.eliminate_zeros()
        m.sum_duplicates()
        m.sort_indices()
        return m

    def get(self, i, j):
        self._check_index(i, j)
        lo, hi = self.csr.indptr[i], self.csr.indptr[i + 1]
        return bool(np.any(self.csr.indices[lo:hi] == j))

    def set_many(self, pairs):
        pairs = list(pairs)
        if not pairs:
            return
        for i, j in pairs:
            self._check_index(i, j)
        rows, cols = zip(*pairs)
        add = sp.csr_array((np.ones(len(pairs), dtype=np.int8), (rows, cols)), shape=(self.n, self.n))
        self.csr = self._normalize(self.csr + add)

    def pairs(self):
        indptr, indices = self.csr.indptr, self.csr.indices
        for i in range(self.n):
            for j in indices[indptr[i]:indptr[i + 1]]:
                yield i, int(j)

    def nnz(self):
        return int(self.csr.nnz)

    def multiply(self, other):
        _check_same(self, other)
        b = _as_sparse(other).csr
        # int32 accumulation: a row of n ones cannot overflow for n < 2**31
        prod = self.csr.astype(np.int32) @ b.astype(np.int32)
        return SparseBitMatrix(self.n, self._normalize(prod))

    def union_inplace(self, other):
        _check_same(self, other)
        src = _as_sparse(other).csr
        if src.nnz == 0:
            return False
        before = self.csr.nnz
        self.csr = self._normalize(self.csr + src)
        return self.csr.nnz != before

    def copy(self):
        return SparseBitMatrix(self.n, self.csr.copy())


def _as_dense(m: BitMatrix) -> DenseBitMatrix:
    if isinstance(m, DenseBitMatrix):
        return m
    return DenseBitMatrix.from_pairs(m.n, m.pairs())


def _as_sparse(m: BitMatrix) -> SparseBitMatrix:
    if isinstance(m, SparseBitMatrix):
        return m
    return SparseBitMatrix.from_pairs(m.n, m.pairs())


def matrix_class(representation: str, n: int, dense_limit: int = DEFAULT_DENSE_LIMIT) -> type[BitMatrix]:
    if representation == AUTO:
        representation = DENSE if n <= dense_limit else SPARSE
    if representation == DENSE:
        return DenseBitMatrix
    if representation == SPARSE:
        return SparseBitMatrix
    raise ValueError(f"unknown representation {representation!r}")


def bool_multiply(a: BitMatrix, b: BitMatrix) -> BitMatrix:
    return a.multiply(b)


def union_inplace(dst: BitMatrix, src: BitMatrix) -> bool:
    """``dst |= src``; True iff some entry went from 0 to 1."""
    return dst.union_inplace(src)


class NontermMatrixSet:
    """One ``n x n`` Boolean matrix per nonterminal.

    Together they encode a matrix whose cells are subsets of nonterminals:
    ``A in cell(i, j)`` iff ``matrices[A].get(i, j)``.
    """

    def __init__(self, matrices: list[BitMatrix]):
        if not matrices:
            raise ValueError("need at least one nonterminal")
        n = matrices[0].n
        if any(m.n != n for m in matrices):
            raise DimensionError("matrices differ in dimension")
        self.matrices = matrices
        self.n = n

    @classmethod
    def empty(cls, nonterm_count: int, n: int, matrix_cls: type[BitMatrix] = DenseBitMatrix):
        return cls([matrix_cls.zeros(n) for _ in range(nonterm_count)])

    @classmethod
    def from_cells(cls, cells, nonterm_count: int, matrix_cls: type[BitMatrix] = DenseBitMatrix):
        """Build from a square list-of-lists of nonterminal-index sets."""
        n = len(cells)
        per = [[] for _ in range(nonterm_count)]
        for i, row in enumerate(cells):
            for j, cell in enumerate(row):
                for a in cell:
                    per[a].append((i, j))
        return cls([matrix_cls.from_pairs(n, p) for p in per])

    @property
    def nonterm_count(self) -> int:
        return len(self.matrices)

    def __getitem__(self, a: int) -> BitMatrix:
        return self.matrices[a]

    def cell(self, i: int, j: int) -> frozenset[int]:
        return frozenset(a for a, m in enumerate(self.matrices) if m.get(i, j))

    def to_cells(self) -> list[list[frozenset[int]]]:
        cells = [[set() for _ in range(self.n)] for _ in range(self.n)]
        for a, m in enumerate(self.matrices):
            for i, j in m.pairs():
                cells[i][j].add(a)
        return [[frozenset(c) for c in row] for row in cells]

    def nnz(self) -> int:
        return sum(m.nnz() for m in self.matrices)

    def copy(self) -> "NontermMatrixSet":
        return NontermMatrixSet([m.copy() for m in self.matrices])

    def union_inplace(self, other: "NontermMatrixSet") -> bool:
        if other.nonterm_count != self.nonterm_count:
            raise DimensionError("nonterminal count mismatch")
        changed = False
        for dst, src in zip(self.matrices, other.matrices):
            changed |= dst.union_inplace(src)
        return changed

    def __le__(self, other: "NontermMatrixSet") -> bool:
        return all(a <= b for a, b in zip(self.matrices, other.matrices, strict=True))

    def __eq__(self, other):
        if not isinstance(other, NontermMatrixSet):
            return NotImplemented
        return self.nonterm_count == other.nonterm_count and all(
            a == b for a, b in zip(self.matrices, other.matrices))

    __hash__ = None

    def __repr__(self):
        return f"NontermMatrixSet(nonterms={self.nonterm_count}, n={self.n}, nnz={self.nnz()})"


def grammar_product(cnf, t: NontermMatrixSet) -> NontermMatrixSet:
    """Set-valued product ``t x t``: one Boolean product per binary rule.

    ``result[A]`` is the OR of ``t[B] @ t[C]`` over rules ``A -> B C``.
    Rule order does not affect the result.
    """
    if t.nonterm_count != cnf.nonterm_count:
        raise DimensionError(f"matrix set has {t.nonterm_count} nonterminals, grammar {cnf.nonterm_count}")
    matrix_cls = type(t[0])
    out = [matrix_cls.zeros(t.n) for _ in range(t.nonterm_count)]
    cache: dict[tuple[int, int], BitMatrix] = {}
    for a, b, c in cnf.binary_rules:
        if t[b].nnz() == 0 or t[c].nnz() == 0:
            continue
        prod = cache.get((b, c))
        if prod is None:
            prod = cache[b, c] = t[b].multiply(t[c])
        out[a].union_inplace(prod)
    return NontermMatrixSet(out)
