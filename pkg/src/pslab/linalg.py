"""Exact sparse linear algebra over Q.

Vectors are dicts ``{column: Fraction}`` with no stored zeros.  A
:class:`Subspace` holds the unique reduced row echelon basis of a span, so
two subspaces are equal exactly when their row tuples are equal.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Sequence, Tuple

Vector = Dict[int, Fraction]


class DimensionMismatch(ValueError):
    pass


@dataclass(frozen=True)
class SparseMatrix:
    """Row-major sparse matrix with a fixed column count."""

    ncols: int
    rows: Tuple[Tuple[Tuple[int, Fraction], ...], ...] = ()

    @classmethod
    def from_rows(cls, ncols: int, rows: Iterable[Mapping[int, object]]) -> "SparseMatrix":
        packed = []
        for r in rows:
            items = []
            for j, v in sorted(r.items()):
                if not 0 <= j < ncols:
                    raise IndexError("column %d out of range for %d columns" % (j, ncols))
                v = Fraction(v)
                if v:
                    items.append((j, v))
            packed.append(tuple(items))
        return cls(ncols, tuple(packed))

    @classmethod
    def from_dense(cls, dense: Sequence[Sequence[object]], ncols: int = None) -> "SparseMatrix":
        if ncols is None:
            ncols = len(dense[0]) if dense else 0
        return cls.from_rows(ncols, ({j: v for j, v in enumerate(r)} for r in dense))

    @classmethod
    def from_columns(cls, nrows: int, columns: Sequence[Mapping[int, object]]) -> "SparseMatrix":
        rows: List[Dict[int, object]] = [dict() for _ in range(nrows)]
        for j, col in enumerate(columns):
            for i, v in col.items():
                rows[i][j] = v
        return cls.from_rows(len(columns), rows)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    def row_dicts(self) -> List[Vector]:
        return [dict(r) for r in self.rows]

    def apply(self, v: Mapping[int, object]) -> List[Fraction]:
        return [sum((c * v.get(j, 0) for j, c in r), Fraction(0)) for r in self.rows]


def _reduce(v: Vector, basis: Dict[int, Vector]) -> Vector:
    """Reduce `v` against fully reduced rows keyed by pivot column."""
    v = dict(v)
    for p in sorted(set(v) & set(basis)):
        c = v.get(p)
        if not c:
            continue
        for j, b in basis[p].items():
            w = v.get(j, 0) - c * b
            if w:
                v[j] = w
            else:
                v.pop(j, None)
    return v


@dataclass(frozen=True)
class Subspace:
    """Span of vectors in Q^ambient, stored as a strict RREF basis."""

    ambient: int
    rows: Tuple[Tuple[Tuple[int, Fraction], ...], ...] = ()

    @property
    def dim(self) -> int:
        return len(self.rows)

    @property
    def pivots(self) -> Tuple[int, ...]:
        return tuple(r[0][0] for r in self.rows)

    def basis(self) -> List[Vector]:
        return [dict(r) for r in self.rows]

    def _by_pivot(self) -> Dict[int, Vector]:
        return {r[0][0]: dict(r) for r in self.rows}

    def contains(self, v: Mapping[int, object]) -> bool:
        v = {j: Fraction(c) for j, c in v.items() if c}
        if any(not 0 <= j < self.ambient for j in v):
            raise DimensionMismatch("vector outside ambient space of dim %d" % self.ambient)
        return not _reduce(v, self._by_pivot())

    def residue(self, v: Mapping[int, object]) -> Vector:
        """Reduction of `v` modulo this subspace (zero iff contained)."""
        return _reduce({j: Fraction(c) for j, c in v.items() if c}, self._by_pivot())


def span(ambient: int, vectors: Iterable[Mapping[int, object]]) -> Subspace:
    """RREF basis of the span of `vectors`."""
    vecs = []
    for v in vectors:
        v = {j: Fraction(c) for j, c in v.items() if c}
        if not v:
            continue
        if min(v) < 0 or max(v) >= ambient:
            raise DimensionMismatch("vector outside ambient space of dim %d" % ambient)
        vecs.append(v)
    # leading column first, then sparsest, to keep fill-in and growth down
    vecs.sort(key=lambda v: (min(v), len(v)))
    basis: Dict[int, Vector] = {}
    for v in vecs:
        v = _reduce(v, basis)
        if not v:
            continue
        p = min(v)
        inv = 1 / v[p]
        if inv != 1:
            v = {j: c * inv for j, c in v.items()}
        for q, row in basis.items():
            c = row.get(p)
            if c:
                for j, b in v.items():
                    w = row.get(j, 0) - c * b
                    if w:
                        row[j] = w
                    else:
                        row.pop(j, None)
        basis[p] = v
    rows = tuple(tuple(sorted(basis[p].items())) for p in sorted(basis))
    return Subspace(ambient, rows)


def rref(m: SparseMatrix) -> Subspace:
    return span(m.ncols, m.row_dicts())


def rank(m: SparseMatrix) -> int:
    return rref(m).dim


def kernel(m: SparseMatrix) -> Subspace:
    """Null space {v : m v = 0} as a subspace of Q^ncols."""
    r = rref(m)
    pivots = set(r.pivots)
    vecs = []
    for f in range(m.ncols):
        if f in pivots:
            continue
        v = {f: Fraction(1)}
        for row in r.rows:
            for j, c in row:
                if j == f:
                    v[row[0][0]] = -c
        vecs.append(v)
    return span(m.ncols, vecs)


def _check(a: Subspace, b: Subspace):
    if a.ambient != b.ambient:
        raise DimensionMismatch("ambient dimensions %d and %d differ" % (a.ambient, b.ambient))


def contains(s: Subspace, v: Mapping[int, object]) -> bool:
    return s.contains(v)


def is_subspace(a: Subspace, b: Subspace) -> bool:
    """True iff a is contained in b."""
    _check(a, b)
    if a.dim > b.dim:
        return False
    piv = b._by_pivot()
    return all(not _reduce(dict(r), piv) for r in a.rows)


def equal(a: Subspace, b: Subspace) -> bool:
    _check(a, b)
    return a.rows == b.rows


def subspace_sum(a: Subspace, b: Subspace) -> Subspace:
    _check(a, b)
    return span(a.ambient, a.basis() + b.basis())


def dim(s: Subspace) -> int:
    return s.dim


def zero_space(ambient: int) -> Subspace:
    return Subspace(ambient)


def full_space(ambient: int) -> Subspace:
    return Subspace(ambient, tuple(((j, Fraction(1)),) for j in range(ambient)))
