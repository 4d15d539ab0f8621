"""Truncated q-series, fermionic sums and difference-two counts.

A :class:`BivariateSeries` is a polynomial in the charge variable whose
coefficients are q-series truncated at a common order; it is stored as
``{charge: QSeries}``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from .algebra import enumerate_monomials
from .ideals import kernel_piece
from .lattice import ModuleConfig

# linear-term conventions L_i(N) for the fermionic sum
CONVENTIONS = ("tail", "head")
DEFAULT_CONVENTION = "tail"


class QSeries:
    """c_0 + c_1 q + ... + c_N q^N, exact, truncated at order N."""

    __slots__ = ("order", "coeffs")

    def __init__(self, coeffs: Sequence = (), order: int = 0):
        if order < 0:
            raise ValueError("order must be >= 0")
        cs = [Fraction(c) for c in list(coeffs)[: order + 1]]
        cs += [Fraction(0)] * (order + 1 - len(cs))
        self.order = order
        self.coeffs = cs

    @classmethod
    def one(cls, order: int) -> "QSeries":
        return cls([1], order)

    @classmethod
    def monomial(cls, e: int, order: int, c=1) -> "QSeries":
        cs = [0] * (order + 1)
        if 0 <= e <= order:
            cs[e] = c
        return cls(cs, order)

    def truncate(self, order: int) -> "QSeries":
        return QSeries(self.coeffs, min(order, self.order))

    def _common(self, other: "QSeries") -> int:
        return min(self.order, other.order)

    def __add__(self, other: "QSeries") -> "QSeries":
        n = self._common(other)
        return QSeries([a + b for a, b in zip(self.coeffs[: n + 1], other.coeffs[: n + 1])], n)

    def __sub__(self, other: "QSeries") -> "QSeries":
        n = self._common(other)
        return QSeries([a - b for a, b in zip(self.coeffs[: n + 1], other.coeffs[: n + 1])], n)

    def __mul__(self, other):
        if not isinstance(other, QSeries):
            return QSeries([c * other for c in self.coeffs], self.order)
        n = self._common(other)
        out = [Fraction(0)] * (n + 1)
        for a, ca in enumerate(self.coeffs[: n + 1]):
            if ca:
                for b in range(n + 1 - a):
                    cb = other.coeffs[b]
                    if cb:
                        out[a + b] += ca * cb
        return QSeries(out, n)

    __rmul__ = __mul__

    def shift(self, e: int) -> "QSeries":
        """Multiply by q^e (e >= 0)."""
        return QSeries([0] * e + self.coeffs, self.order)

    def inverse(self) -> "QSeries":
        c0 = self.coeffs[0]
        if not c0:
            raise ZeroDivisionError("series with zero constant term is not invertible")
        out = [Fraction(0)] * (self.order + 1)
        out[0] = 1 / c0
        for n in range(1, self.order + 1):
            s = sum((self.coeffs[j] * out[n - j] for j in range(1, n + 1)), Fraction(0))
            out[n] = -s / c0
        return QSeries(out, self.order)

    def __eq__(self, other):
        if not isinstance(other, QSeries):
            return NotImplemented
        return self.order == other.order and self.coeffs == other.coeffs

    def __getitem__(self, n: int) -> Fraction:
        return self.coeffs[n] if 0 <= n <= self.order else Fraction(0)

    def ints(self) -> List[int]:
        out = []
        for c in self.coeffs:
            if c.denominator != 1:
                raise ValueError("non-integral coefficient %s" % c)
            out.append(int(c))
        return out

    def __repr__(self):
        return "QSeries(%s, order=%d)" % ([str(c) for c in self.coeffs], self.order)


class BivariateSeries:
    """sum_r x^r S_r(q), with every S_r truncated at the same order."""

    def __init__(self, order: int, parts: Dict[int, QSeries] = None):
        self.order = order
        self.parts: Dict[int, QSeries] = {}
        for r, s in sorted((parts or {}).items()):
            s = s.truncate(order)
            if any(s.coeffs):
                self.parts[r] = s

    def add_term(self, r: int, s: QSeries) -> None:
        cur = self.parts.get(r, QSeries([], self.order))
        new = cur + s.truncate(self.order)
        if any(new.coeffs):
            self.parts[r] = new
        else:
            self.parts.pop(r, None)
        self.parts = dict(sorted(self.parts.items()))

    def coefficient(self, r: int, n: int) -> Fraction:
        s = self.parts.get(r)
        return s[n] if s is not None else Fraction(0)

    def charge_summed(self) -> QSeries:
        out = QSeries([], self.order)
        for s in self.parts.values():
            out = out + s
        return out

    def truncate(self, order: int) -> "BivariateSeries":
        return BivariateSeries(min(order, self.order), self.parts)

    def __eq__(self, other):
        if not isinstance(other, BivariateSeries):
            return NotImplemented
        return self.order == other.order and self.parts == other.parts

    def to_json(self) -> list:
        return [[r, s.ints()] for r, s in self.parts.items()]

    @classmethod
    def from_json(cls, data: list, order: int) -> "BivariateSeries":
        return cls(order, {int(r): QSeries(cs, order) for r, cs in data})

    def __repr__(self):
        return "BivariateSeries(order=%d, %s)" % (self.order, self.to_json())


def q_pochhammer(n: int, order: int) -> QSeries:
    """(q; q)_n = (1 - q)(1 - q^2)...(1 - q^n), truncated."""
    out = QSeries.one(order)
    for j in range(1, n + 1):
        out = out * QSeries([1] + [0] * (j - 1) + [-1], order)
    return out


def _linear_term(Ns: Sequence[int], k: int, i: int, convention: str) -> int:
    # Ns[0] is N_1
    if convention == "tail":
        return sum(Ns[k - i:])
    if convention == "head":
        return sum(Ns[i:])
    raise ValueError("unknown convention %r (choose from %s)" % (convention, CONVENTIONS))


def _quadratic_vectors(k: int, order: int) -> Iterator[Tuple[int, ...]]:
    """(n_1..n_k) >= 0 with N_1^2 + ... + N_k^2 <= order."""
    def rec(j: int, tail: int, acc: Tuple[int, ...], budget: int):
        # choose n_j for j = k, k-1, ..., 1; tail = N_{j+1}
        if j == 0:
            yield acc
            return
        nj = 0
        while True:
            N = tail + nj
            cost = N * N
            if cost > budget:
                break
            yield from rec(j - 1, N, (nj,) + acc, budget - cost)
            nj += 1
    yield from rec(k, 0, (), order)


def fermionic_sum(k: int, i: int, order: int, convention: str = DEFAULT_CONVENTION) -> BivariateSeries:
    """sum x^{N_1+..+N_k} q^{N_1^2+..+N_k^2 + L_i(N)} / ((q)_{n_1}...(q)_{n_k}).

    N_j = n_j + ... + n_k.  `convention` picks the linear term:
    ``tail`` is N_{k-i+1}+...+N_k, ``head`` is N_{i+1}+...+N_k.
    """
    if convention not in CONVENTIONS:
        raise ValueError("unknown convention %r (choose from %s)" % (convention, CONVENTIONS))
    inv = {}
    out = BivariateSeries(order)
    for ns in _quadratic_vectors(k, order):
        Ns = [sum(ns[j:]) for j in range(k)]
        e = sum(N * N for N in Ns) + _linear_term(Ns, k, i, convention)
        if e > order:
            continue
        term = QSeries.monomial(e, order)
        for n in ns:
            if n not in inv:
                inv[n] = q_pochhammer(n, order).inverse()
            term = term * inv[n]
        out.add_term(sum(Ns), term)
    return out


def dimension_table(k: int, i: int, order: int, max_charge: int = None) -> BivariateSeries:
    """Bigraded dimensions of W(Lambda_{k,i}) from the exact kernels."""
    cfg = ModuleConfig(k, i)
    out = BivariateSeries(order)
    for n in range(order + 1):
        top = n if max_charge is None else min(n, max_charge)
        for c in range(top + 1):
            total = len(enumerate_monomials(n, c, 1))
            if not total:
                continue
            d = total - kernel_piece(cfg, n, c).dim
            if d:
                out.add_term(c, QSeries.monomial(n, order, d))
    return out


def satisfies_difference_two(parts: Sequence[int], k: int, i: int) -> bool:
    """d_j >= d_{j+k} + 2 for all j, and at most k - i parts equal to 1."""
    if parts.count(1) > k - i:
        return False
    return all(parts[j] >= parts[j + k] + 2 for j in range(len(parts) - k))


def difference_two_count(k: int, i: int, n: int, c: int = None) -> int:
    """Number of difference-two monomials of weight n (and charge c, if given)."""
    charges = range(n + 1) if c is None else [c]
    return sum(1 for r in charges for m in enumerate_monomials(n, r, 1)
               if satisfies_difference_two(m, k, i))


def difference_two_table(k: int, i: int, order: int) -> BivariateSeries:
    out = BivariateSeries(order)
    for n in range(order + 1):
        for c in range(n + 1):
            d = difference_two_count(k, i, n, c)
            if d:
                out.add_term(c, QSeries.monomial(n, order, d))
    return out


@dataclass
class SeriesComparison:
    equal: bool
    charge: Optional[int] = None
    power: Optional[int] = None
    left: Optional[int] = None
    right: Optional[int] = None

    def __str__(self):
        if self.equal:
            return "equal"
        return "mismatch at x^%d q^%d: %s != %s" % (self.charge, self.power, self.left, self.right)


def compare(a: BivariateSeries, b: BivariateSeries, order: int = None) -> SeriesComparison:
    """First coefficient mismatch, scanning by power of q then by charge."""
    if order is None:
        order = min(a.order, b.order)
    if order > min(a.order, b.order):
        raise ValueError("comparison order exceeds truncation")
    charges = sorted(set(a.parts) | set(b.parts))
    for n in range(order + 1):
        for r in charges:
            ca, cb = a.coefficient(r, n), b.coefficient(r, n)
            if ca != cb:
                return SeriesComparison(False, r, n, ca, cb)
    return SeriesComparison(True)


def find_convention(k_max: int, order: int) -> List[str]:
    """Conventions for which the fermionic sum reproduces dimension_table
    for every 1 <= k <= k_max and 0 <= i <= k."""
    good = []
    for conv in CONVENTIONS:
        if all(compare(dimension_table(k, i, order), fermionic_sum(k, i, order, conv)).equal
               for k in range(1, k_max + 1) for i in range(k + 1)):
            good.append(conv)
    return good


def rogers_ramanujan_counts(order: int) -> List[int]:
    """Partitions of n into parts differing pairwise by at least 2, brute force
    over all partitions."""
    out = []
    for n in range(order + 1):
        cnt = 0
        for c in range(n + 1):
            for m in enumerate_monomials(n, c, 1):
                if all(m[j] - m[j + 1] >= 2 for j in range(len(m) - 1)):
                    cnt += 1
        out.append(cnt)
    return out
