from itertools import permutations

import pytest
import sympy

from pslab import ideals, linalg
from pslab.algebra import GradedPolynomial, enumerate_monomials, poly_to_vector, r_generator, x
from pslab.ideals import (
    basis_polys,
    compare_piece,
    ideal_piece,
    kernel_piece,
    verify_annihilation,
    verify_kernel_chain,
    verify_lifting_lemma,
    verify_presentation,
    verify_ideal_relations,
    verify_tau_lemma,
)
from pslab.lattice import ModuleConfig, evaluate


def span_of(polys, n, c, mp=1):
    return linalg.span(len(enumerate_monomials(n, c, mp)), [poly_to_vector(p, n, c, mp) for p in polys])


def test_ideal_piece_examples():
    assert linalg.equal(ideal_piece(1, 0, 2, 2), span_of([x(1) ** 2], 2, 2))
    assert linalg.equal(ideal_piece(1, 1, 1, 1), span_of([x(1)], 1, 1))
    assert ideal_piece(1, 0, 2, 1).dim == 0
    assert ideal_piece(2, 1, 0, 0).dim == 0


def test_kernel_piece_examples():
    assert linalg.equal(kernel_piece(ModuleConfig(1, 0), 2, 2), span_of([x(1) ** 2], 2, 2))
    assert kernel_piece(ModuleConfig(1, 0), 1, 1).dim == 0
    assert kernel_piece(ModuleConfig(2, 0), 2, 2).dim == 0
    for k in (1, 2, 3):
        for i in range(k + 1):
            assert kernel_piece(ModuleConfig(k, i), 0, 0).dim == 0


def _sympy_rank(cfg, n, c):
    monos = enumerate_monomials(n, c, 1)
    cols = [evaluate(GradedPolynomial.monomial(m), cfg) for m in monos]
    keys = sorted({key for col in cols for key in col})
    if not keys:
        return 0
    mat = sympy.Matrix([[sympy.Rational(col.get(key, 0).numerator, col.get(key, 0).denominator)
                         if key in col else 0 for col in cols] for key in keys])
    return mat.rank()


@pytest.mark.parametrize("k,i", [(1, 0), (1, 1), (2, 0), (2, 2), (3, 1)])
def test_kernel_dimension_against_sympy_rank(k, i):
    cfg = ModuleConfig(k, i)
    for n in range(1, 8):
        for c in range(1, n + 1):
            total = len(enumerate_monomials(n, c, 1))
            assert kernel_piece(cfg, n, c).dim == total - _sympy_rank(cfg, n, c)


@pytest.mark.parametrize("k", [1, 2, 3])
def test_ideal_is_always_in_kernel(k):
    for i in range(k + 1):
        cfg = ModuleConfig(k, i)
        for n in range(9):
            for c in range(n + 1):
                assert linalg.is_subspace(ideal_piece(k, i, n, c), kernel_piece(cfg, n, c))


@pytest.mark.parametrize("k,i", [(2, 1), (3, 1), (3, 2)])
def test_kernel_does_not_depend_on_pattern(k, i):
    patterns = sorted(set(permutations((1,) * i + (0,) * (k - i))))
    assert len(patterns) > 1
    for n in range(8):
        for c in range(n + 1):
            pieces = [kernel_piece(ModuleConfig(k, i, p), n, c) for p in patterns]
            assert all(linalg.equal(pieces[0], q) for q in pieces[1:])


def test_quotient_dimension_is_rank():
    for k, i in [(1, 0), (2, 1), (3, 3)]:
        cfg = ModuleConfig(k, i)
        for n in range(7):
            for c in range(n + 1):
                m = ideals.evaluation_matrix(cfg, n, c)
                assert m.ncols - kernel_piece(cfg, n, c).dim == linalg.rank(m)


def test_verify_presentation_small():
    rows = verify_presentation(1, 0, 6)
    assert all(r.equal and r.ideal_in_kernel and r.kernel_in_ideal for r in rows)
    assert all(r.dim_ideal <= r.dim_kernel for r in rows)
    row = [r for r in verify_presentation(1, 1, 1) if (r.weight, r.charge) == (1, 1)][0]
    assert row.dim_ideal == row.dim_kernel == 1
    for k in (1, 2, 3):
        for i in range(k + 1):
            r0 = verify_presentation(k, i, 0)[0]
            assert (r0.dim_ideal, r0.dim_kernel) == (0, 0)


def test_sink_receives_rows():
    seen = []
    rows = verify_presentation(2, 1, 3, sink=seen.append)
    assert seen == rows


def test_missing_generator_is_detected(monkeypatch):
    """Dropping x(-1)^{k-i+1} from the ideal must produce a failing row with a witness."""
    def truncated(k, i, n, c, primed=False):
        gens = []
        for t in range(k + 1, n + 1):
            for m in enumerate_monomials(n - t, c - k - 1, 1):
                gens.append(GradedPolynomial.monomial(m) * r_generator(k, t))
        return span_of(gens, n, c)

    monkeypatch.setattr(ideals, "ideal_piece", truncated)
    rows = verify_presentation(1, 1, 3)
    bad = [r for r in rows if not r.equal]
    assert bad and bad[0].weight == 1 and bad[0].charge == 1
    assert bad[0].ideal_in_kernel and not bad[0].kernel_in_ideal
    assert bad[0].witness == "x(-1)"


def test_ideal_relations_examples():
    assert all(r.passed for r in verify_ideal_relations(2, 8))
    rho_piece = [r for r in verify_ideal_relations(1, 4) if r.check == "rho_image" and (r.weight, r.charge) == (4, 2)]
    assert rho_piece[0].passed
    primed = ideal_piece(1, 1, 4, 2, primed=True)
    assert linalg.equal(primed, span_of([x(2) ** 2], 4, 2, 2))


def test_lifting_examples():
    # tau(x(-1)^2) = x(-2)^2 = R0_{1,4} - 2 x(-3) x(-1)
    assert x(2) ** 2 == r_generator(1, 4) - 2 * x(3) * x(1)
    assert ideal_piece(1, 1, 4, 2).contains(poly_to_vector(x(2) ** 2, 4, 2))
    rows = verify_lifting_lemma(1, 0, 6)
    assert all(r.passed for r in rows)
    mult = ideals.multinomial_rows(1)
    assert all(r.passed for r in mult)
    for k in (2, 3):
        # i = k: x(-1) in I_{k,k}, its image x(-2) x(-1)^k lies in I_{k,0}
        img = x(2) * x(1) ** k
        assert ideal_piece(k, 0, k + 2, k + 1).contains(poly_to_vector(img, k + 2, k + 1))
        assert all(r.passed for r in verify_lifting_lemma(k, k, 6))


def test_tau_lemma_examples():
    assert ideal_piece(1, 1, 4, 2).contains(poly_to_vector(x(2) ** 2, 4, 2))
    assert ideal_piece(2, 2, 6, 3).contains(poly_to_vector(x(2) ** 3, 6, 3))
    assert r_generator(2, 6).coefficient((2, 2, 2)) == 1
    assert all(r.passed for r in verify_tau_lemma(2, 8))


def test_kernel_chain_examples():
    assert all(r.passed for r in verify_kernel_chain(2, 8))
    assert kernel_piece(ModuleConfig(1, 1), 2, 2).contains(poly_to_vector(x(1) ** 2, 2, 2))


def test_annihilation_examples():
    assert not evaluate(x(1) ** 2, ModuleConfig(1, 0))
    for i in range(3):
        assert not evaluate(x(1) ** 3, ModuleConfig(2, i))
    assert not evaluate(r_generator(2, 5), ModuleConfig(2, 1))
    assert all(r.passed for r in verify_annihilation(2, 8))


def test_charge_k_plus_one_kernel_is_single_relation():
    for k in (1, 2):
        for n in range(k + 1, 10):
            ker = kernel_piece(ModuleConfig(k, 0), n, k + 1)
            polys = basis_polys(ker, n, k + 1)
            assert len(polys) == 1
            r = r_generator(k, n)
            lead = min(r.terms)  # any coefficient works for proportionality
            assert polys[0].scale(r.terms[lead] / polys[0].terms[lead]) == r
