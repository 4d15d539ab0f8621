"""Exit criteria. Every comparison is exact equality over Q."""

import random
import time
from fractions import Fraction
from math import factorial

from pslab import ideals
from pslab.algebra import GradedPolynomial, enumerate_monomials, multiply, r_generator, tau, x
from pslab.characters import (
    compare,
    difference_two_table,
    dimension_table,
    fermionic_sum,
    find_convention,
    rogers_ramanujan_counts,
)
from pslab.cli import plan_tasks, run_tasks
from pslab.lattice import ModuleConfig, diagonal_mode, ealpha_half, evaluate, graded_basis

LEVELS = (1, 2, 3)


def _failures(rows):
    return [r for r in rows if not (r["passed"] if isinstance(r, dict) else r.passed)]


def test_01_presentation_level_one(criterion):
    start = time.perf_counter()
    rows = []
    for i in (0, 1):
        rows += ideals.verify_presentation(1, i, 18)
    elapsed = time.perf_counter() - start
    assert len(rows) == 2 * sum(n + 1 for n in range(19))
    bad = _failures(rows)
    criterion("01 presentation k=1 weight<=18 (%d pieces, %.1fs)" % (len(rows), elapsed),
              not bad and elapsed <= 120)


def test_02_presentation_higher_level(criterion):
    start = time.perf_counter()
    rows = []
    for k, n_max in ((2, 14), (3, 12)):
        opts = {"max_charge": None, "max_weight": n_max, "t_max": n_max}
        rows += run_tasks(plan_tasks(k, list(range(k + 1)), ["presentation"], n_max, opts), jobs=4)
    elapsed = time.perf_counter() - start
    assert len(rows) == 3 * sum(n + 1 for n in range(15)) + 4 * sum(n + 1 for n in range(13))
    bad = _failures(rows)
    criterion("02 presentation k=2 weight<=14, k=3 weight<=12 (%d pieces, %.1fs)" % (len(rows), elapsed),
              not bad and elapsed <= 900)


def test_03_primed_presentation(criterion):
    rows = []
    for k in LEVELS:
        rows += ideals.verify_primed_presentation(k, 12)
    criterion("03 primed presentation k<=3 weight<=12 (%d pieces)" % len(rows), not _failures(rows))


def test_04_annihilation(criterion):
    rows = []
    for k in LEVELS:
        rows += ideals.verify_annihilation(k, 14)
    expected = sum((k + 1) * (14 - k + 1) for k in LEVELS)
    assert len(rows) == expected
    criterion("04 annihilation by R0_{k,t} (t<=14) and x(-1)^{k-i+1}", not _failures(rows))


def test_05_lemma_suite(criterion):
    rows = []
    for k in LEVELS:
        rows += ideals.verify_ideal_relations(k, 12)
        for i in range(k + 1):
            rows += ideals.verify_lifting_lemma(k, i, 12)
        rows += ideals.verify_tau_lemma(k, 12)
        rows += ideals.verify_kernel_chain(k, 12)
    checks = {r.check for r in rows}
    assert checks == {"ideal_chain", "ideal_sum", "rho_image", "direct_sum", "lifting", "tau", "kernel_chain"}
    criterion("05 ideal relations, lifting, tau and kernel-chain lemmas, weight<=12 (%d rows)" % len(rows),
              not _failures(rows))


def _random_tensor(rng, cfg):
    w = {}
    for _ in range(rng.randint(1, 4)):
        n = rng.randint(0, 6)
        c = rng.randint(0, n)
        keys = graded_basis(cfg, n, c)
        if keys:
            w[rng.choice(keys)] = Fraction(rng.randint(-5, 5) or 1, rng.randint(1, 3))
    return w


def _shift_identity_holds(a: GradedPolynomial, cfg: ModuleConfig) -> bool:
    lhs = ealpha_half(evaluate(a, cfg))
    rhs = evaluate(multiply(tau(a), x(1) ** cfg.i), cfg.complement())
    scale = Fraction(1, factorial(cfg.i))
    return lhs == {key: c * scale for key, c in rhs.items()}


def test_06_lattice_invariants(criterion):
    rng = random.Random(20261016)
    commute_ok = 0
    trials = 0
    while trials < 200:
        k = rng.choice(LEVELS)
        cfg = ModuleConfig(k, rng.randint(0, k))
        w = _random_tensor(rng, cfg)
        if not w:
            continue
        trials += 1
        m, n = rng.randint(-4, -1), rng.randint(-4, -1)
        if diagonal_mode(m, diagonal_mode(n, w, k), k) == diagonal_mode(n, diagonal_mode(m, w, k), k):
            commute_ok += 1

    shift_cases = shift_ok = 0
    for k in LEVELS:
        for i in range(k + 1):
            patterns = {ModuleConfig(k, i).pattern, tuple(reversed(ModuleConfig(k, i).pattern))}
            for pat in patterns:
                cfg = ModuleConfig(k, i, pat)
                for n in range(9):
                    for c in range(n + 1):
                        for mono in enumerate_monomials(n, c, 1):
                            shift_cases += 1
                            shift_ok += _shift_identity_holds(GradedPolynomial.monomial(mono), cfg)

    mult_rows = []
    for k in range(1, 5):
        mult_rows += ideals.multinomial_rows(k)
        for i in range(k + 1):
            coeff = r_generator(k, 2 * k - i + 2).coefficient((2,) * (k - i + 1) + (1,) * i)
            assert coeff == Fraction(factorial(k + 1), factorial(k - i + 1) * factorial(i))

    ok = commute_ok == 200 and shift_ok == shift_cases and not _failures(mult_rows)
    criterion("06 lattice: commutativity %d/200, shift identity %d/%d, multinomials k<=4"
              % (commute_ok, shift_ok, shift_cases), ok)


def test_07_characters(criterion):
    order = 14
    results = []
    for k in LEVELS:
        for i in range(k + 1):
            dims = dimension_table(k, i, order)
            results.append(compare(dims, difference_two_table(k, i, order)).equal)
            results.append(compare(dims, fermionic_sum(k, i, order, "tail")).equal)
    conventions = find_convention(3, order)
    rr = rogers_ramanujan_counts(order)
    summed = dimension_table(1, 0, order).charge_summed().ints()
    assert rr[4] == 2
    ok = all(results) and conventions == ["tail"] and summed == rr
    criterion("07 characters to q^14: difference-two, fermionic (convention %s), Rogers-Ramanujan"
              % conventions, ok)


def test_08_charge_bound(criterion):
    rows = []
    for k in LEVELS:
        rows += ideals.verify_charge_bound(k, 14)
    assert {r.charge for r in rows} == set(range(0, 5))
    criterion("08 i=0 kernels vanish below charge k+1, are one-dimensional at k+1 (%d pieces)" % len(rows),
              not _failures(rows))
