import random

import pytest
from hypothesis import given, settings, strategies as st

from cfpq.bitmatrix import (DenseBitMatrix, DimensionError, NontermMatrixSet, SparseBitMatrix,
                            bool_multiply, grammar_product, matrix_class, union_inplace)
from cfpq.engine import init_matrix
from cfpq.oracle import set_matmul
from strategies import bool_pairs, cnf_grammars, set_matrices

KINDS = [DenseBitMatrix, SparseBitMatrix]


def naive_product(n, a_pairs, b_pairs):
    a = [[(i, j) in a_pairs for j in range(n)] for i in range(n)]
    b = [[(i, j) in b_pairs for j in range(n)] for i in range(n)]
    return {(i, j) for i in range(n) for j in range(n) if any(a[i][k] and b[k][j] for k in range(n))}


@pytest.mark.parametrize("cls", KINDS)
def test_identity_is_neutral(cls):
    m = cls.from_pairs(5, [(0, 3), (2, 2), (4, 1)])
    assert bool_multiply(cls.identity(5), m) == m
    assert bool_multiply(m, cls.identity(5)) == m


@pytest.mark.parametrize("cls", KINDS)
def test_single_entries_compose(cls):
    out = bool_multiply(cls.from_pairs(3, [(0, 1)]), cls.from_pairs(3, [(1, 2)]))
    assert set(out.pairs()) == {(0, 2)}


@pytest.mark.parametrize("cls", KINDS)
@pytest.mark.parametrize("seed", range(5))
def test_random_8x8_against_triple_loop(cls, seed):
    rng = random.Random(seed)
    a = {(rng.randrange(8), rng.randrange(8)) for _ in range(20)}
    b = {(rng.randrange(8), rng.randrange(8)) for _ in range(20)}
    got = bool_multiply(cls.from_pairs(8, a), cls.from_pairs(8, b))
    assert set(got.pairs()) == naive_product(8, a, b)


@pytest.mark.parametrize("cls", KINDS)
def test_dimension_mismatch(cls):
    with pytest.raises(DimensionError):
        bool_multiply(cls.zeros(2), cls.zeros(3))
    with pytest.raises(DimensionError):
        union_inplace(cls.zeros(2), cls.zeros(3))


@pytest.mark.parametrize("cls", KINDS)
def test_union_change_flag(cls):
    dst = cls.from_pairs(4, [(0, 0)])
    assert union_inplace(dst, cls.zeros(4)) is False
    src = cls.from_pairs(4, [(3, 1)])
    assert union_inplace(dst, src) is True
    assert set(dst.pairs()) == {(0, 0), (3, 1)}
    assert union_inplace(dst, src) is False


@pytest.mark.parametrize("cls", KINDS)
def test_get_and_bounds(cls):
    m = cls.from_pairs(3, [(1, 2)])
    assert m.get(1, 2) and not m.get(2, 1)
    with pytest.raises(IndexError):
        m.get(3, 0)
    assert m.nnz() == 1


def test_matrix_class_switch():
    assert matrix_class("auto", 10) is DenseBitMatrix
    assert matrix_class("auto", 5000) is SparseBitMatrix
    assert matrix_class("auto", 5000, dense_limit=10000) is DenseBitMatrix
    with pytest.raises(ValueError):
        matrix_class("gpu", 3)


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 8).flatmap(lambda n: st.tuples(st.just(n), bool_pairs(n), bool_pairs(n), bool_pairs(n))))
def test_associative_monotone_and_representation_agnostic(args):
    n, pa, pb, pc = args
    results = []
    for cls in KINDS:
        a, b, c = (cls.from_pairs(n, p) for p in (pa, pb, pc))
        left = (a @ b) @ c
        assert left == a @ (b @ c)
        bigger = a.copy()
        bigger.union_inplace(c)
        assert (a @ b) <= (bigger @ b)
        u = a.copy()
        changed = u.union_inplace(b)
        assert changed == bool(pb - pa)
        results.append((set(left.pairs()), set(u.pairs())))
    assert results[0] == results[1]
    assert results[0][0] == naive_product(n, naive_product(n, pa, pb), pc)


def test_grammar_product_on_example(ex_graph, ex_cnf):
    prod = grammar_product(ex_cnf, init_matrix(ex_graph, ex_cnf))
    s = ex_cnf.index("S")
    assert {(a, i, j) for a, m in enumerate(prod.matrices) for i, j in m.pairs()} == {(s, 1, 2)}


def test_grammar_product_of_empty(ex_cnf):
    empty = NontermMatrixSet.empty(ex_cnf.nonterm_count, 4)
    assert grammar_product(ex_cnf, empty).nnz() == 0


def test_grammar_product_count_mismatch(ex_cnf):
    with pytest.raises(DimensionError):
        grammar_product(ex_cnf, NontermMatrixSet.empty(2, 3))


@settings(max_examples=100, deadline=None)
@given(cnf_grammars(max_nonterms=3).flatmap(lambda g: st.tuples(st.just(g), set_matrices(g.nonterm_count, 5))))
def test_grammar_product_matches_subset_arithmetic(args):
    cnf, cells = args
    expected = set_matmul(cnf, cells, cells)
    for cls in KINDS:
        t = NontermMatrixSet.from_cells(cells, cnf.nonterm_count, cls)
        assert grammar_product(cnf, t).to_cells() == expected


@settings(max_examples=60, deadline=None)
@given(cnf_grammars(max_nonterms=3).flatmap(
    lambda g: st.tuples(st.just(g), set_matrices(g.nonterm_count, 5), st.randoms(use_true_random=False))))
def test_grammar_product_is_monotone(args):
    cnf, cells, rng = args
    n = len(cells)
    smaller = [[frozenset(a for a in c if rng.random() < 0.5) for c in row] for row in cells]
    lo = grammar_product(cnf, NontermMatrixSet.from_cells(smaller, cnf.nonterm_count))
    hi = grammar_product(cnf, NontermMatrixSet.from_cells(cells, cnf.nonterm_count))
    assert lo <= hi
    assert lo.n == n


def test_cells_round_trip():
    cells = [[frozenset({0}), frozenset()], [frozenset({0, 1}), frozenset({1})]]
    t = NontermMatrixSet.from_cells(cells, 2, SparseBitMatrix)
    assert t.to_cells() == cells
    assert t.cell(1, 0) == {0, 1}
