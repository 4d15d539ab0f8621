"""Lattice realization of the level-k standard modules.

V_P is spanned by vectors ``u (x) e^{l alpha}`` with u a monomial in the
Heisenberg creation operators alpha(-n) and l in (1/2)Z.  A single-slot
basis vector is a :class:`FockBasisVector` carrying the partition of u and
``two_l = 2l``.  Level-k vectors live in the k-fold tensor power and are dicts
from k-tuples of basis vectors to Fractions.

The lattice 2-cocycle is taken trivial.  Weights are measured relative to
the highest weight vector: u (x) e^{l alpha} has weight |u| + l^2.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import comb, factorial
from typing import Dict, Iterator, List, Mapping, NamedTuple, Sequence, Tuple

from .algebra import GradedPolynomial, Monomial, enumerate_monomials


class FockBasisVector(NamedTuple):
    heis: Tuple[int, ...]  # descending parts of the Heisenberg monomial
    two_l: int  # twice the lattice coordinate

    @property
    def l(self) -> Fraction:
        return Fraction(self.two_l, 2)

    @property
    def weight(self) -> Fraction:
        return sum(self.heis) + Fraction(self.two_l * self.two_l, 4)

    def __str__(self):
        return "[%s|%s]" % (",".join(map(str, self.heis)), self.l)


TensorKey = Tuple[FockBasisVector, ...]
FockVector = Dict[FockBasisVector, Fraction]
TensorVector = Dict[TensorKey, Fraction]


def tensor_key_str(key: TensorKey) -> str:
    return "⊗".join(str(b) for b in key)


def tensor_str(w: Mapping[TensorKey, Fraction]) -> str:
    if not w:
        return "0"
    return " + ".join("%s*%s" % (c, tensor_key_str(key)) for key, c in sorted(w.items()))


@dataclass(frozen=True)
class ModuleConfig:
    """Which L(Lambda_{k,i}) and which embedding into V_P^{(x)k}."""

    k: int
    i: int
    pattern: Tuple[int, ...] = None

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("level k must be >= 1")
        if not 0 <= self.i <= self.k:
            raise ValueError("index i must satisfy 0 <= i <= k")
        if self.pattern is None:
            object.__setattr__(self, "pattern", (1,) * self.i + (0,) * (self.k - self.i))
        pat = tuple(self.pattern)
        object.__setattr__(self, "pattern", pat)
        if len(pat) != self.k or any(j not in (0, 1) for j in pat) or sum(pat) != self.i:
            raise ValueError("pattern %r does not have k=%d entries with %d ones"
                             % (pat, self.k, self.i))

    @property
    def conformal_offset(self) -> Fraction:
        return Fraction(self.i * self.i + 2 * self.i, 4 * (self.k + 2))

    @property
    def charge_offset(self) -> Fraction:
        return Fraction(self.i, 2)

    def complement(self) -> "ModuleConfig":
        return ModuleConfig(self.k, self.k - self.i, tuple(1 - j for j in self.pattern))


def _add_into(out: dict, key, c):
    v = out.get(key, 0) + c
    if v:
        out[key] = v
    else:
        out.pop(key, None)


def _merge(a: Tuple[int, ...], b: Tuple[int, ...]) -> Tuple[int, ...]:
    if not b:
        return a
    if not a:
        return b
    return tuple(sorted(a + b, reverse=True))


@lru_cache(maxsize=None)
def _z(nu: Tuple[int, ...]) -> int:
    out = 1
    for n, mult in Counter(nu).items():
        out *= n ** mult * factorial(mult)
    return out


@lru_cache(maxsize=None)
def _creation_series(degree: int) -> Tuple[Tuple[Tuple[int, ...], Fraction], ...]:
    """x^degree coefficient of exp(sum_{n>0} alpha(-n) x^n / n)."""
    if degree < 0:
        return ()
    out = []
    for c in range(degree + 1):
        for nu in enumerate_monomials(degree, c, 1):
            out.append((nu, Fraction(1, _z(nu))))
    return tuple(out)


@lru_cache(maxsize=None)
def _annihilation_terms(heis: Tuple[int, ...]) -> Tuple[Tuple[Tuple[int, ...], int, int], ...]:
    """Action of exp(-sum_{n>0} alpha(n) x^{-n} / n) on alpha(-heis).

    Returns (remaining partition, power of x^{-1}, integer coefficient).
    Removing a parts n from a multiplicity-m block contributes (-2)^a C(m, a).
    """
    blocks = sorted(Counter(heis).items(), reverse=True)
    out = []
    for choice in product(*(range(m + 1) for _, m in blocks)):
        coeff = 1
        removed = 0
        rest: List[int] = []
        for (n, m), a in zip(blocks, choice):
            coeff *= (-2) ** a * comb(m, a)
            removed += n * a
            rest.extend([n] * (m - a))
        out.append((tuple(rest), removed, coeff))
    return tuple(out)


@lru_cache(maxsize=None)
def slot_mode(m: int, b: FockBasisVector) -> Tuple[Tuple[FockBasisVector, Fraction], ...]:
    """x_alpha(m) on one basis vector of V_P, as a tuple of (vector, coeff).

    x_alpha(m) is the x^{-m-1} coefficient of
    exp(sum alpha(-n) x^n/n) exp(-sum alpha(n) x^{-n}/n) e^alpha x^{alpha(0)}.
    """
    out: Dict[FockBasisVector, Fraction] = {}
    new_l = b.two_l + 2
    for rest, removed, coeff in _annihilation_terms(b.heis):
        degree = -m - 1 - b.two_l + removed
        for nu, c in _creation_series(degree):
            _add_into(out, FockBasisVector(_merge(rest, nu), new_l), coeff * c)
    return tuple(sorted(out.items()))


def heis_action(n: int, v: Mapping[FockBasisVector, object]) -> FockVector:
    """alpha(n) on a single-slot vector; [alpha(m), alpha(n)] = 2m delta_{m+n,0}."""
    out: FockVector = {}
    for b, c in v.items():
        c = Fraction(c)
        if n < 0:
            _add_into(out, FockBasisVector(_merge(b.heis, (-n,)), b.two_l), c)
        elif n == 0:
            if b.two_l:
                _add_into(out, b, c * b.two_l)
        else:
            mult = b.heis.count(n)
            if mult:
                rest = list(b.heis)
                rest.remove(n)
                _add_into(out, FockBasisVector(tuple(rest), b.two_l), c * 2 * n * mult)
    return out


def xalpha_mode(m: int, v: Mapping[FockBasisVector, object]) -> FockVector:
    out: FockVector = {}
    for b, c in v.items():
        c = Fraction(c)
        for nb, d in slot_mode(m, b):
            _add_into(out, nb, c * d)
    return out


VACUA = (FockBasisVector((), 0), FockBasisVector((), 1))


def highest_weight_vector(cfg: ModuleConfig) -> TensorVector:
    return {tuple(VACUA[j] for j in cfg.pattern): Fraction(1)}


def diagonal_mode(m: int, w: Mapping[TensorKey, object], k: int = None) -> TensorVector:
    """x_alpha(m) acting on V_P^{(x)k} through the coproduct."""
    out: TensorVector = {}
    for key, c in w.items():
        if k is not None and len(key) != k:
            raise ValueError("tensor vector has %d slots, expected %d" % (len(key), k))
        for s, b in enumerate(key):
            for nb, d in slot_mode(m, b):
                _add_into(out, key[:s] + (nb,) + key[s + 1:], c * d)
    return out


class Evaluator:
    """f_{Lambda_{k,i}}: a -> a . v for one fixed embedding.

    Images of monomials are memoized on their tails, so evaluating every
    monomial of a graded piece shares most of the work.
    """

    def __init__(self, cfg: ModuleConfig):
        self.cfg = cfg
        self._memo: Dict[Monomial, TensorVector] = {(): highest_weight_vector(cfg)}

    def monomial(self, parts: Monomial) -> TensorVector:
        hit = self._memo.get(parts)
        if hit is not None:
            return hit
        # apply the smallest mode last-in-tuple first: parts are descending
        w = diagonal_mode(-parts[0], self.monomial(parts[1:]))
        self._memo[parts] = w
        return w

    def __call__(self, a: GradedPolynomial) -> TensorVector:
        out: TensorVector = {}
        for m, c in a.terms.items():
            for key, d in self.monomial(m).items():
                _add_into(out, key, c * d)
        return out


@lru_cache(maxsize=None)
def evaluator(cfg: ModuleConfig) -> Evaluator:
    return Evaluator(cfg)


def evaluate(a: GradedPolynomial, cfg: ModuleConfig) -> TensorVector:
    if any(m and m[-1] < 1 for m in a.terms):
        raise ValueError("evaluate needs an element of U(n_-)")
    return evaluator(cfg)(a)


def ealpha_half(w: Mapping[TensorKey, object]) -> TensorVector:
    """e^{alpha/2} on every tensor factor (trivial cocycle)."""
    out: TensorVector = {}
    for key, c in w.items():
        _add_into(out, tuple(FockBasisVector(b.heis, b.two_l + 1) for b in key), Fraction(c))
    return out


def relative_weight(key: TensorKey, cfg: ModuleConfig) -> Fraction:
    return sum((b.weight for b in key), Fraction(0)) - sum(
        (VACUA[j].weight for j in cfg.pattern), Fraction(0))


def relative_charge(key: TensorKey, cfg: ModuleConfig) -> Fraction:
    return Fraction(sum(b.two_l for b in key), 2) - cfg.charge_offset


def _slot_choices(j: int, budget: Fraction) -> Iterator[Tuple[int, Fraction]]:
    # two_l with the parity of j and l^2 - (j/2)^2 <= budget
    base = Fraction(j * j, 4)
    bound = 0
    while Fraction(bound * bound, 4) - base <= budget:
        bound += 1
    for t in range(-bound, bound + 1):
        if (t - j) % 2:
            continue
        cost = Fraction(t * t, 4) - base
        if cost <= budget:
            yield t, cost


def graded_basis(cfg: ModuleConfig, weight: int, charge) -> List[TensorKey]:
    """All basis k-tuples of relative weight `weight` and relative charge `charge`."""
    charge = Fraction(charge)
    target_two_l = 2 * (charge + cfg.charge_offset)
    if target_two_l.denominator != 1:
        return []
    target_two_l = int(target_two_l)
    weight = Fraction(weight)
    out: List[TensorKey] = []

    def rec(s: int, budget: Fraction, two_l_sum: int, prefix: List[Tuple[int, Fraction]]):
        if s == cfg.k:
            if two_l_sum != target_two_l or budget.denominator != 1:
                return
            # distribute the remaining integer weight over the Heisenberg parts
            for sizes in _compositions(int(budget), cfg.k):
                parts = [_all_partitions(n) for n in sizes]
                for heis in product(*parts):
                    out.append(tuple(FockBasisVector(h, t) for h, (t, _) in zip(heis, prefix)))
            return
        for t, cost in _slot_choices(cfg.pattern[s], budget):
            rec(s + 1, budget - cost, two_l_sum + t, prefix + [(t, cost)])

    if weight >= 0:
        rec(0, weight, 0, [])
    return sorted(set(out))


def _compositions(n: int, k: int) -> Iterator[Tuple[int, ...]]:
    if k == 1:
        yield (n,)
        return
    for a in range(n + 1):
        for rest in _compositions(n - a, k - 1):
            yield (a,) + rest


@lru_cache(maxsize=None)
def _all_partitions(n: int) -> Tuple[Tuple[int, ...], ...]:
    return tuple(p for c in range(n + 1) for p in enumerate_monomials(n, c, 1))
