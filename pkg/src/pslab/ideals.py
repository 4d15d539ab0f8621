"""Graded pieces of the ideals I_{k,i}, I'_{k,k} and of Ker f_{k,i}.

Everything is computed one bigrade (weight n, charge c) at a time, as a
:class:`~pslab.linalg.Subspace` of the coordinate space spanned by
``enumerate_monomials(n, c, min_part)``.  The verification routines return
lists of report rows; a failing comparison is a row with ``passed=False``,
never an exception.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Callable, Dict, Iterable, List, Optional

from . import linalg
from .algebra import (
    GradedPolynomial,
    enumerate_monomials,
    merge,
    monomial_index,
    multiply,
    poly_to_vector,
    r_generator,
    rho,
    tau,
    vector_to_poly,
    x,
)
from .lattice import ModuleConfig, evaluate, evaluator
from .linalg import Subspace


@dataclass
class GradedPieceReport:
    k: int
    i: int
    weight: int
    charge: int
    dim_monomials: int
    dim_ideal: int
    dim_kernel: int
    ideal_in_kernel: bool
    kernel_in_ideal: bool
    equal: bool
    primed: bool = False
    witness: Optional[str] = None

    @property
    def passed(self) -> bool:
        return self.equal

    def to_dict(self) -> dict:
        d = asdict(self)
        d["check"] = "presentation_primed" if self.primed else "presentation"
        d["passed"] = self.passed
        return d


@dataclass
class CheckRow:
    """Outcome of one lemma check at one bigrade (or one generator)."""

    check: str
    k: int
    i: Optional[int]
    weight: int
    charge: int
    passed: bool
    detail: str = ""
    witness: Optional[str] = None

    def to_dict(self) -> dict:
        return asdict(self)


Sink = Optional[Callable[[object], None]]


def _emit(rows: list, row, sink: Sink):
    rows.append(row)
    if sink is not None:
        sink(row)


def _min_part(primed: bool) -> int:
    return 2 if primed else 1


def _span_polys(polys: Iterable[GradedPolynomial], n: int, c: int, min_part: int) -> Subspace:
    ambient = len(enumerate_monomials(n, c, min_part))
    return linalg.span(ambient, (poly_to_vector(p, n, c, min_part) for p in polys))


def basis_polys(s: Subspace, n: int, c: int, min_part: int = 1) -> List[GradedPolynomial]:
    return [vector_to_poly(v, n, c, min_part) for v in s.basis()]


@lru_cache(maxsize=None)
def ideal_piece(k: int, i: int, n: int, c: int, primed: bool = False) -> Subspace:
    """(n, c) piece of I_{Lambda_{k,i}}, or of I'_{Lambda_{k,k}} when primed."""
    if primed and i != k:
        raise ValueError("the primed ideal exists only for i = k")
    mp = _min_part(primed)
    gens = []
    if n >= 0 and c >= 0:
        cof_charge = c - (k + 1)
        if cof_charge >= 0:
            start = 2 * (k + 1) if primed else k + 1
            for t in range(start, n + 1):
                r = r_generator(k, t, 1 if primed else 0)
                for m in enumerate_monomials(n - t, cof_charge, mp):
                    gens.append(multiply(GradedPolynomial.monomial(m), r))
        e = k - i + 1
        if not primed and c >= e and n >= e:
            for m in enumerate_monomials(n - e, c - e, 1):
                gens.append(GradedPolynomial.monomial(merge(m, (1,) * e)))
    return _span_polys(gens, n, c, mp)


def evaluation_matrix(cfg: ModuleConfig, n: int, c: int, min_part: int = 1) -> linalg.SparseMatrix:
    """Matrix of f restricted to the (n, c) piece: one column per monomial."""
    ev = evaluator(cfg)
    columns = [ev.monomial(m) for m in enumerate_monomials(n, c, min_part)]
    support = sorted({key for col in columns for key in col})
    row_of = {key: r for r, key in enumerate(support)}
    return linalg.SparseMatrix.from_columns(
        len(support), [{row_of[key]: v for key, v in col.items()} for col in columns])


@lru_cache(maxsize=None)
def kernel_piece(cfg: ModuleConfig, n: int, c: int, primed: bool = False) -> Subspace:
    """(n, c) piece of Ker f_{Lambda_{k,i}} (of Ker f' when primed)."""
    if primed and cfg.i != cfg.k:
        raise ValueError("the primed map exists only for i = k")
    if n < 0 or c < 0:
        return linalg.zero_space(0)
    return linalg.kernel(evaluation_matrix(cfg, n, c, _min_part(primed)))


def u_times_x1_power(n: int, c: int, e: int) -> Subspace:
    """(n, c) piece of U(n_-) x(-1)^e: monomials with at least e parts equal to 1."""
    basis = enumerate_monomials(n, c, 1)
    vecs = [{j: 1} for j, m in enumerate(basis) if m.count(1) >= e]
    return linalg.span(len(basis), vecs)


def embed_primed(s: Subspace, n: int, c: int) -> Subspace:
    """View a subspace of U(n_{<=-2})_{(n,c)} inside U(n_-)_{(n,c)}."""
    small = enumerate_monomials(n, c, 2)
    index = monomial_index(n, c, 1)
    vecs = [{index[small[j]]: v for j, v in row} for row in s.rows]
    return linalg.span(len(index), vecs)


def _witness(a: Subspace, b: Subspace, n: int, c: int, mp: int) -> Optional[str]:
    """Text of a basis vector of a that is not in b, if any."""
    for v in a.basis():
        if not b.contains(v):
            return str(vector_to_poly(v, n, c, mp))
    return None


def _bigrades(n_max: int, max_charge: Optional[int] = None):
    for n in range(n_max + 1):
        top = n if max_charge is None else min(n, max_charge)
        for c in range(top + 1):
            yield n, c


def compare_piece(k: int, i: int, n: int, c: int, primed: bool = False,
                  cfg: ModuleConfig = None) -> GradedPieceReport:
    if cfg is None:
        cfg = ModuleConfig(k, i)
    mp = _min_part(primed)
    ideal = ideal_piece(k, i, n, c, primed)
    ker = kernel_piece(cfg, n, c, primed)
    i_in_k = linalg.is_subspace(ideal, ker)
    k_in_i = linalg.is_subspace(ker, ideal)
    witness = None
    if not i_in_k:
        witness = _witness(ideal, ker, n, c, mp)
    elif not k_in_i:
        witness = _witness(ker, ideal, n, c, mp)
    return GradedPieceReport(
        k=k, i=i, weight=n, charge=c,
        dim_monomials=ideal.ambient, dim_ideal=ideal.dim, dim_kernel=ker.dim,
        ideal_in_kernel=i_in_k, kernel_in_ideal=k_in_i,
        equal=i_in_k and k_in_i, primed=primed, witness=witness)


def verify_presentation(k: int, i: int, n_max: int, sink: Sink = None,
                        max_charge: int = None, weights: Iterable[int] = None) -> List[GradedPieceReport]:
    """Ker f_{k,i} = I_{k,i} at every bigrade up to weight n_max."""
    rows: List[GradedPieceReport] = []
    for n, c in _bigrades(n_max, max_charge):
        if weights is not None and n not in weights:
            continue
        _emit(rows, compare_piece(k, i, n, c), sink)
    return rows


def verify_primed_presentation(k: int, n_max: int, sink: Sink = None,
                               max_charge: int = None, weights: Iterable[int] = None) -> List[CheckRow]:
    """Ker f'_{k,k} = I'_{k,k}, computed directly and through I = I' + U x(-1).

    Since x(-1) kills v_{k,k}, Ker f_{k,k} = Ker f' (+) U(n_-) x(-1); so the
    primed kernel must equal rho of the unprimed kernel, and the ideal I'
    must complete U(n_-) x(-1) to the full kernel.
    """
    rows: List[CheckRow] = []
    for n, c in _bigrades(n_max, max_charge):
        if weights is not None and n not in weights:
            continue
        rep = compare_piece(k, k, n, c, primed=True)
        ker_full = kernel_piece(ModuleConfig(k, k), n, c)
        from_full = _span_polys((rho(p) for p in basis_polys(ker_full, n, c)), n, c, 2)
        ker_primed = kernel_piece(ModuleConfig(k, k), n, c, primed=True)
        rho_ok = linalg.equal(from_full, ker_primed)
        x1 = u_times_x1_power(n, c, 1)
        rebuilt = linalg.subspace_sum(embed_primed(ideal_piece(k, k, n, c, True), n, c), x1)
        deco_ok = linalg.equal(rebuilt, ker_full)
        ok = rep.equal and rho_ok and deco_ok
        detail = "dim_ideal=%d dim_kernel=%d rho_kernel=%s decomposition=%s" % (
            rep.dim_ideal, rep.dim_kernel, rho_ok, deco_ok)
        _emit(rows, CheckRow("presentation_primed", k, k, n, c, ok, detail, rep.witness), sink)
    return rows


def verify_ideal_relations(k: int, n_max: int, sink: Sink = None, max_charge: int = None,
                     weights: Iterable[int] = None) -> List[CheckRow]:
    """Ideal chain, I_i = I_0 + U x(-1)^{k-i+1}, rho(I_kk) = I', I_kk = I' (+) U x(-1)."""
    rows: List[CheckRow] = []
    for n, c in _bigrades(n_max, max_charge):
        if weights is not None and n not in weights:
            continue
        pieces = [ideal_piece(k, i, n, c) for i in range(k + 1)]
        for i in range(k):
            ok = linalg.is_subspace(pieces[i], pieces[i + 1])
            _emit(rows, CheckRow("ideal_chain", k, i, n, c, ok,
                                 "I_%d in I_%d" % (i, i + 1),
                                 None if ok else _witness(pieces[i], pieces[i + 1], n, c, 1)), sink)
        for i in range(k + 1):
            rhs = linalg.subspace_sum(pieces[0], u_times_x1_power(n, c, k - i + 1))
            ok = linalg.equal(pieces[i], rhs)
            _emit(rows, CheckRow("ideal_sum", k, i, n, c, ok,
                                 "I_%d = I_0 + U x(-1)^%d" % (i, k - i + 1)), sink)
        primed = ideal_piece(k, k, n, c, True)
        image = _span_polys((rho(p) for p in basis_polys(pieces[k], n, c)), n, c, 2)
        ok = linalg.equal(image, primed)
        _emit(rows, CheckRow("rho_image", k, k, n, c, ok,
                             "dim rho(I)=%d dim I'=%d" % (image.dim, primed.dim)), sink)
        x1 = u_times_x1_power(n, c, 1)
        emb = embed_primed(primed, n, c)
        total = linalg.subspace_sum(emb, x1)
        ok = (total.dim == emb.dim + x1.dim) and linalg.equal(total, pieces[k])
        _emit(rows, CheckRow("direct_sum", k, k, n, c, ok,
                             "dim I=%d dim I'=%d dim Ux(-1)=%d" % (pieces[k].dim, emb.dim, x1.dim)), sink)
    return rows


def multinomial_rows(k: int) -> List[CheckRow]:
    """x(-2)^{k-i+1} x(-1)^i in R^0_{k,2k-i+2}: its coefficient, and that it is
    the only term with at most i factors x(-1)."""
    rows = []
    for i in range(k + 1):
        t = 2 * k - i + 2
        r = r_generator(k, t, 0)
        mono = (2,) * (k - i + 1) + (1,) * i
        expected = Fraction(factorial(k + 1), factorial(k - i + 1) * factorial(i))
        got = r.coefficient(mono)
        others = [m for m in r.terms if m != mono and m.count(1) <= i]
        ok = got == expected and not others
        _emit(rows, CheckRow("multinomial", k, i, t, k + 1, ok,
                             "coefficient %s expected %s; other low terms %d" % (got, expected, len(others))),
              None)
    return rows


def verify_lifting_lemma(k: int, i: int, n_max: int, sink: Sink = None, max_charge: int = None,
                         weights: Iterable[int] = None) -> List[CheckRow]:
    """tau(a) x(-1)^i lies in I_{k,k-i} for every a in I_{k,i}."""
    rows: List[CheckRow] = []
    x1i = x(1) ** i
    for n, c in _bigrades(n_max, max_charge):
        if weights is not None and n not in weights:
            continue
        src = ideal_piece(k, i, n, c)
        tn, tc = n + c + i, c + i
        ok = True
        witness = None
        if src.dim:
            target = ideal_piece(k, k - i, tn, tc)
            for a in basis_polys(src, n, c):
                image = multiply(tau(a), x1i)
                if not target.contains(poly_to_vector(image, tn, tc)):
                    ok, witness = False, str(a)
                    break
        _emit(rows, CheckRow("lifting", k, i, n, c, ok,
                             "dim=%d into I_%d at (%d,%d)" % (src.dim, k - i, tn, tc), witness), sink)
    return rows


def verify_tau_lemma(k: int, n_max: int, sink: Sink = None, max_charge: int = None,
                     weights: Iterable[int] = None) -> List[CheckRow]:
    """tau(I_{k,0}) is contained in I_{k,k}."""
    rows: List[CheckRow] = []
    for n, c in _bigrades(n_max, max_charge):
        if weights is not None and n not in weights:
            continue
        src = ideal_piece(k, 0, n, c)
        ok = True
        witness = None
        if src.dim:
            target = ideal_piece(k, k, n + c, c)
            for a in basis_polys(src, n, c):
                if not target.contains(poly_to_vector(tau(a), n + c, c)):
                    ok, witness = False, str(a)
                    break
        _emit(rows, CheckRow("tau", k, 0, n, c, ok, "dim=%d" % src.dim, witness), sink)
    return rows


def verify_kernel_chain(k: int, n_max: int, sink: Sink = None, max_charge: int = None,
                        weights: Iterable[int] = None) -> List[CheckRow]:
    """Ker f_{k,0} in Ker f_{k,1} in ... in Ker f_{k,k}."""
    rows: List[CheckRow] = []
    for n, c in _bigrades(n_max, max_charge):
        if weights is not None and n not in weights:
            continue
        kers = [kernel_piece(ModuleConfig(k, i), n, c) for i in range(k + 1)]
        for i in range(k):
            ok = linalg.is_subspace(kers[i], kers[i + 1])
            _emit(rows, CheckRow("kernel_chain", k, i, n, c, ok,
                                 "dims %d <= %d" % (kers[i].dim, kers[i + 1].dim),
                                 None if ok else _witness(kers[i], kers[i + 1], n, c, 1)), sink)
    return rows


def verify_annihilation(k: int, t_max: int, sink: Sink = None) -> List[CheckRow]:
    """R^0_{k,t} and x(-1)^{k-i+1} kill every v_{Lambda_{k,i}}."""
    rows: List[CheckRow] = []
    for i in range(k + 1):
        cfg = ModuleConfig(k, i)
        for t in range(k + 1, t_max + 1):
            ok = not evaluate(r_generator(k, t, 0), cfg)
            _emit(rows, CheckRow("annihilation", k, i, t, k + 1, ok, "R0_{%d,%d}" % (k, t)), sink)
        e = k - i + 1
        ok = not evaluate(x(1) ** e, cfg)
        _emit(rows, CheckRow("annihilation", k, i, e, e, ok, "x(-1)^%d" % e), sink)
    return rows


def verify_charge_bound(k: int, n_max: int, sink: Sink = None,
                        weights: Iterable[int] = None) -> List[CheckRow]:
    """For i = 0: no kernel below charge k+1, and at charge k+1 the kernel is
    spanned by the single relation R^0_{k,n}."""
    rows: List[CheckRow] = []
    cfg = ModuleConfig(k, 0)
    for n in range(n_max + 1):
        if weights is not None and n not in weights:
            continue
        for c in range(min(n, k + 1) + 1):
            ker = kernel_piece(cfg, n, c)
            if c <= k:
                ok = ker.dim == 0
                detail = "dim=%d (must be 0)" % ker.dim
            else:
                expected = _span_polys([r_generator(k, n, 0)], n, c, 1)
                ok = ker.dim <= 1 and linalg.equal(ker, expected)
                detail = "dim=%d (must be <=1, spanned by R0_{%d,%d})" % (ker.dim, k, n)
            _emit(rows, CheckRow("charge_bound", k, 0, n, c, ok, detail), sink)
    return rows
