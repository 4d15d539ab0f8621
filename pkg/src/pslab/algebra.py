"""The bigraded polynomial algebras U(n_-) and U(n_{<=-2}).

A monomial x(-d1)*x(-d2)*...*x(-dr) is stored as the descending tuple
``(d1, d2, ..., dr)``; its weight is the sum of the parts and its charge is
the number of parts.  The empty tuple is the unit.

Monomials inside one graded piece are ordered by descending lexicographic
order on their part sequences, e.g. ``(3, 1)`` before ``(2, 2)``.  Across
pieces the order is by (weight, charge) first.  This order fixes the column
indexing of every matrix built over a graded piece.
"""

from __future__ import annotations

from collections import Counter
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Tuple

Monomial = Tuple[int, ...]

ONE: Monomial = ()


def weight(m: Monomial) -> int:
    return sum(m)


def charge(m: Monomial) -> int:
    return len(m)


def monomial_key(m: Monomial):
    """Sort key realizing the global monomial order."""
    return (sum(m), len(m), tuple(-d for d in m))


def monomial_str(m: Monomial) -> str:
    if not m:
        return "1"
    out = []
    for d, mult in sorted(Counter(m).items(), reverse=True):
        s = "x(-%d)" % d
        if mult > 1:
            s += "^%d" % mult
        out.append(s)
    return "*".join(out)


def _partitions(n: int, c: int, lo: int, hi: int) -> Iterator[Monomial]:
    # parts in [lo, hi], descending
    if c == 0:
        if n == 0:
            yield ()
        return
    if n < c * lo:
        return
    top = min(hi, n - (c - 1) * lo)
    for d in range(top, lo - 1, -1):
        for rest in _partitions(n - d, c - 1, lo, d):
            yield (d,) + rest


@lru_cache(maxsize=None)
def enumerate_monomials(weight: int, charge: int, min_part: int = 1) -> Tuple[Monomial, ...]:
    """All partitions of `weight` into exactly `charge` parts >= `min_part`.

    Returned in descending lexicographic order.  Empty when infeasible.
    """
    if min_part not in (1, 2):
        raise ValueError("min_part must be 1 or 2")
    if weight < 0 or charge < 0:
        return ()
    return tuple(_partitions(weight, charge, min_part, weight))


@lru_cache(maxsize=None)
def monomial_index(weight: int, charge: int, min_part: int = 1) -> Dict[Monomial, int]:
    return {m: j for j, m in enumerate(enumerate_monomials(weight, charge, min_part))}


def merge(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    return tuple(sorted(a + b, reverse=True))


class GradedPolynomial:
    """Finite rational combination of monomials.

    Values are treated as immutable; all operations return new objects.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Optional[Mapping[Monomial, object]] = None):
        clean: Dict[Monomial, Fraction] = {}
        if terms:
            for m, c in terms.items():
                c = Fraction(c)
                if c:
                    m = tuple(sorted(m, reverse=True))
                    if any(d < 1 for d in m):
                        raise ValueError("parts must be positive: %r" % (m,))
                    c = clean.get(m, 0) + c
                    if c:
                        clean[m] = c
                    else:
                        clean.pop(m, None)
        self.terms = clean

    @classmethod
    def _raw(cls, terms: Dict[Monomial, Fraction]) -> "GradedPolynomial":
        p = cls.__new__(cls)
        p.terms = terms
        return p

    @classmethod
    def monomial(cls, m: Iterable[int], coeff=1) -> "GradedPolynomial":
        return cls({tuple(m): coeff})

    @classmethod
    def constant(cls, c) -> "GradedPolynomial":
        return cls({ONE: c})

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, GradedPolynomial):
            return self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == GradedPolynomial.constant(other)
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other: "GradedPolynomial") -> "GradedPolynomial":
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = out.get(m, 0) + c
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return GradedPolynomial._raw(out)

    def __neg__(self):
        return GradedPolynomial._raw({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, s) -> "GradedPolynomial":
        s = Fraction(s)
        if not s:
            return GradedPolynomial()
        return GradedPolynomial._raw({m: c * s for m, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, GradedPolynomial):
            return multiply(self, other)
        return self.scale(other)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        out = GradedPolynomial.constant(1)
        for _ in range(e):
            out = out * self
        return out

    def monomials(self) -> List[Monomial]:
        return sorted(self.terms, key=monomial_key)

    def bidegrees(self) -> set:
        return {(weight(m), charge(m)) for m in self.terms}

    def is_homogeneous(self) -> bool:
        return len(self.bidegrees()) <= 1

    def bidegree(self) -> Tuple[int, int]:
        degs = self.bidegrees()
        if len(degs) != 1:
            raise ValueError("not a nonzero doubly homogeneous polynomial")
        return next(iter(degs))

    def coefficient(self, m: Monomial) -> Fraction:
        return self.terms.get(tuple(sorted(m, reverse=True)), Fraction(0))

    def __str__(self):
        if not self.terms:
            return "0"
        pieces = []
        for j, m in enumerate(self.monomials()):
            c = self.terms[m]
            sign = "-" if c < 0 else "+"
            a = abs(c)
            body = monomial_str(m)
            if a != 1:
                body = "%s*%s" % (a, body) if m else str(a)
            if j == 0:
                pieces.append(("-" if sign == "-" else "") + body)
            else:
                pieces.append(" %s %s" % (sign, body))
        return "".join(pieces)

    def __repr__(self):
        return "GradedPolynomial(%s)" % self


def x(d: int) -> GradedPolynomial:
    """The generator x_alpha(-d), d >= 1."""
    return GradedPolynomial.monomial((d,))


def multiply(p: GradedPolynomial, q: GradedPolynomial) -> GradedPolynomial:
    out: Dict[Monomial, Fraction] = {}
    for a, ca in p.terms.items():
        for b, cb in q.terms.items():
            m = merge(a, b)
            v = out.get(m, 0) + ca * cb
            if v:
                out[m] = v
            else:
                out.pop(m, None)
    return GradedPolynomial._raw(out)


def tau_power(p: GradedPolynomial, s: int) -> GradedPolynomial:
    """Apply the translation automorphism s times: x(-d) -> x(-d-s)."""
    out = {}
    for m, c in p.terms.items():
        shifted = tuple(d + s for d in m)
        if shifted and shifted[-1] < 1:
            raise ValueError(
                "tau^%d leaves U(n_-) on monomial %s" % (s, monomial_str(m)))
        out[shifted] = c
    return GradedPolynomial._raw(out)


def tau(p: GradedPolynomial) -> GradedPolynomial:
    return tau_power(p, 1)


def rho(p: GradedPolynomial) -> GradedPolynomial:
    """Projection onto U(n_{<=-2}): drop every monomial containing x(-1)."""
    return GradedPolynomial._raw({m: c for m, c in p.terms.items() if not m or m[-1] >= 2})


def multinomial(m: Monomial) -> int:
    """Number of distinct orderings of the multiset `m`."""
    out = factorial(len(m))
    for mult in Counter(m).values():
        out //= factorial(mult)
    return out


@lru_cache(maxsize=None)
def r_generator(k: int, t: int, variant: int = 0) -> GradedPolynomial:
    """Truncated relation R^0_{k,t} (variant 0) or R^1_{k,t} (variant 1).

    Sum of x(m1)...x(m_{k+1}) over ordered tuples with every m_j <= -1
    (resp. <= -2) and m1 + ... + m_{k+1} = -t, collapsed to commutative form.
    """
    if k < 1:
        raise ValueError("level must be >= 1")
    if variant not in (0, 1):
        raise ValueError("variant must be 0 or 1")
    terms = {m: multinomial(m) for m in enumerate_monomials(t, k + 1, variant + 1)} if t >= 0 else {}
    return GradedPolynomial(terms)


def poly_to_vector(p: GradedPolynomial, n: int, c: int, min_part: int = 1) -> Dict[int, Fraction]:
    """Coordinates of a (n, c)-homogeneous polynomial in the monomial basis."""
    index = monomial_index(n, c, min_part)
    out = {}
    for m, coeff in p.terms.items():
        try:
            out[index[m]] = coeff
        except KeyError:
            raise ValueError("monomial %s is not in the (%d, %d) piece" % (monomial_str(m), n, c))
    return out


def vector_to_poly(v: Mapping[int, object], n: int, c: int, min_part: int = 1) -> GradedPolynomial:
    basis = enumerate_monomials(n, c, min_part)
    return GradedPolynomial({basis[j]: coeff for j, coeff in v.items()})
