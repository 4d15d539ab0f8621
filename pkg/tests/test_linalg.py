import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from pslab import linalg
from pslab.linalg import DimensionMismatch, SparseMatrix, kernel, rref, span


def dense(rows):
    return SparseMatrix.from_dense(rows)


def as_dense(s):
    out = []
    for r in s.rows:
        row = [Fraction(0)] * s.ambient
        for j, v in r:
            row[j] = v
        out.append(row)
    return out


def random_sparse(rng, nrows, ncols, density=0.3):
    rows = []
    for _ in range(nrows):
        rows.append({j: Fraction(rng.randint(-4, 4), rng.randint(1, 3))
                     for j in range(ncols) if rng.random() < density})
    return SparseMatrix.from_rows(ncols, rows)


def test_rref_examples():
    eye = dense([[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    assert as_dense(rref(eye)) == [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
    s = rref(dense([[1, 2], [2, 4]]))
    assert as_dense(s) == [[1, 2]] and s.dim == 1
    assert rref(dense([[0, 0], [0, 0]])).dim == 0


def test_kernel_examples():
    assert kernel(dense([[1, 0, 0], [0, 1, 0], [0, 0, 1]])).dim == 0
    k = kernel(dense([[1, -1]]))
    assert as_dense(k) == [[1, 1]]
    assert kernel(dense([[0, 0, 0], [0, 0, 0]])).dim == 3


def test_subspace_examples():
    e1 = span(2, [{0: 1}])
    plane = span(2, [{0: 1}, {1: 1}])
    assert linalg.contains(e1, {0: 2})
    assert not linalg.contains(e1, {1: 1})
    assert linalg.is_subspace(span(2, [{0: 1, 1: 1}]), plane)
    total = linalg.subspace_sum(e1, span(2, [{1: 1}]))
    assert total.dim == 2 and linalg.equal(total, plane)
    with pytest.raises(DimensionMismatch):
        linalg.is_subspace(e1, span(3, []))


@pytest.mark.parametrize("seed", range(40))
def test_rank_nullity_and_exact_kernel(seed):
    rng = random.Random(seed)
    m = random_sparse(rng, rng.randint(1, 9), rng.randint(1, 9))
    r = rref(m)
    k = kernel(m)
    assert r.dim + k.dim == m.ncols
    for v in k.basis():
        assert all(c == 0 for c in m.apply(v))
    # independent rank from sympy
    sm = sympy.Matrix([[sympy.Rational(c.numerator, c.denominator) for c in row]
                       for row in ([dict(r_).get(j, Fraction(0)) for j in range(m.ncols)] for r_ in m.rows)])
    assert sm.rank() == r.dim
    assert len(sm.nullspace()) == k.dim


@pytest.mark.parametrize("seed", range(20))
def test_rref_is_canonical_and_idempotent(seed):
    rng = random.Random(1000 + seed)
    m = random_sparse(rng, 6, 7, 0.5)
    s = rref(m)
    pivots = s.pivots
    assert list(pivots) == sorted(set(pivots))
    for r in s.rows:
        assert r[0][1] == 1
        others = {j for j, _ in r} & set(pivots)
        assert others == {r[0][0]}
    assert rref(SparseMatrix.from_rows(s.ambient, s.basis())) == s
    # same span from shuffled, rescaled generators gives identical rows
    rows = m.row_dicts()
    rng.shuffle(rows)
    rows = [{j: v * 3 for j, v in r.items()} for r in rows]
    assert span(m.ncols, rows) == s


vec = st.dictionaries(st.integers(0, 4), st.integers(-3, 3), max_size=4)


@settings(max_examples=80, deadline=None)
@given(st.lists(vec, max_size=4), st.lists(vec, max_size=4))
def test_equal_iff_mutual_inclusion(a_vecs, b_vecs):
    a, b = span(5, a_vecs), span(5, b_vecs)
    assert linalg.equal(a, b) == (linalg.is_subspace(a, b) and linalg.is_subspace(b, a))
    s = linalg.subspace_sum(a, b)
    assert linalg.is_subspace(a, s) and linalg.is_subspace(b, s)
    assert s.dim <= a.dim + b.dim
