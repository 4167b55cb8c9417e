"""Acceptance criteria 1-14, one test each.

Each test records a single PASS/FAIL line that is echoed in the
"acceptance criteria" section at the end of the pytest run.
"""
import random
import time

import pytest
from mpmath import mp, mpf

from mtzeta.identities import check_mr1, run_suite
from mtzeta.mteval import euler_double_zeta, mt_convergent, mt_zeta_fast, mt_zeta_oracle
from mtzeta.numerics import riemann_zeta
from mtzeta.series import (
    IndexVector,
    akmt_coefficients,
    bernoulli_numbers,
    check_lemma_aaaa,
)

PREC = 256
WP = PREC + 32


def record(lines, n, ok, text):
    lines[n] = f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {text}"
    return ok


def pick(reports, **params):
    out = [r for r in reports if all(_same(r.parameters.get(k), v) for k, v in params.items())]
    assert len(out) == 1, params
    return out[0]


def _same(a, b):
    if isinstance(b, str):
        with mp.workprec(WP):
            from mtzeta.numerics import parse_complex

            return a == parse_complex(b)
    return a == b


def all_pass(reports, residual_cap=None):
    ok = all(r.passed for r in reports)
    if residual_cap is not None:
        ok = ok and all(r.residual <= residual_cap for r in reports)
    return ok


def worst(reports):
    return max(r.residual for r in reports)


def z(n):
    return riemann_zeta(n, PREC).estimate


def test_criterion_01_depth3_example(acceptance_lines):
    t0 = time.perf_counter()
    v = mt_zeta_fast((2, 1, 1), 1, prec=PREC)
    elapsed = time.perf_counter() - t0
    with mp.workprec(WP):
        res = abs(v.estimate - (2 * z(2) * z(3) - z(5)))
        ok = res <= v.abs_error + mpf("1e-10") and res <= mpf("1e-20") and elapsed < 30
    assert record(acceptance_lines, 1, ok,
                  f"zeta_MT,3(2,1,1;1) residual {mp.nstr(res, 3)}, {elapsed:.1f} s")


def test_criterion_02_depth5_example(acceptance_lines):
    t0 = time.perf_counter()
    v = mt_zeta_fast((2, 1, 1, 1, 1), 1, prec=PREC)
    elapsed = time.perf_counter() - t0
    with mp.workprec(WP):
        want = 24 * (z(2) * z(5) + 3 * z(3) * z(4) - 4 * z(7))
        res = abs(v.estimate - want)
        ok = res <= v.abs_error + mpf("1e-10") and elapsed < 180
    assert record(acceptance_lines, 2, ok,
                  f"zeta_MT,5(2,1,1,1,1;1) residual {mp.nstr(res, 3)}, {elapsed:.1f} s")


def test_criterion_03_all_ones(acceptance_lines, suite_256):
    reps = suite_256["mtval"]
    ok = len(reps) == 4 and all_pass(reps, mpf("1e-20"))
    assert record(acceptance_lines, 3, ok, f"m = 0..3, worst residual {mp.nstr(worst(reps), 3)}")


def test_criterion_04_binomial_relation(acceptance_lines, suite_256):
    pts = [(2, "3"), (2, "7/2"), (3, "4"), (3, "3+0.5i")]
    reps = [pick(suite_256["mr1"], r=r, s=s) for r, s in pts]
    ok = all_pass(reps)
    assert record(acceptance_lines, 4, ok, f"4 points, worst residual {mp.nstr(worst(reps), 3)}")


def test_criterion_05_values_at_integers(acceptance_lines, suite_256):
    reps = [pick(suite_256["mr2"], r=r, m=m) for r, m in [(2, 1), (2, 2), (2, 3), (3, 3)]]
    display = pick(suite_256["mr2_display"], m=3)
    ok = all_pass(reps) and display.passed and display.asserted
    assert record(acceptance_lines, 5, ok,
                  f"4 points + display at m=3, worst residual {mp.nstr(worst(reps + [display]), 3)}")


def test_criterion_06_closed_form(acceptance_lines, suite_256):
    reps = suite_256["mr3"]
    ok = [r.parameters["k"] for r in reps] == [1, 2] and all_pass(reps)
    assert record(acceptance_lines, 6, ok, f"k = 1, 2, worst residual {mp.nstr(worst(reps), 3)}")


def test_criterion_07_double_zeta(acceptance_lines, suite_256):
    reps = [pick(suite_256["eq75"], a=a, b=b) for a, b in [(2, 3), (3, 2), (4, 3), (1, 2)]]
    v = euler_double_zeta(1, 2, prec=PREC)
    with mp.workprec(WP):
        cross = abs(v.estimate - z(3))
    ok = all_pass(reps) and cross <= mpf("1e-30")
    assert record(acceptance_lines, 7, ok,
                  f"4 points, worst residual {mp.nstr(worst(reps), 3)}; "
                  f"zeta(1,2) - zeta(3) = {mp.nstr(cross, 3)}")


def test_criterion_08_inclusion_exclusion(acceptance_lines, suite_256):
    pts = [(2, [1], "4"), (2, [2], "4"), (3, [1, 1], "9/2")]
    reps = [pick(suite_256["mr4"], N=N, rvec=rv, s=s) for N, rv, s in pts]
    big = reps[-1]
    other = check_mr1(3, mpf(9) / 2, prec=PREC)
    with mp.workprec(WP):
        agree = all(
            abs(a.estimate - b.estimate) <= a.abs_error + b.abs_error + big.slack
            for a, b in [(big.lhs, other.lhs), (big.rhs, other.rhs)]
        )
    ok = all_pass(reps) and other.passed and agree
    assert record(acceptance_lines, 8, ok,
                  f"3 points, worst residual {mp.nstr(worst(reps), 3)}; "
                  f"(3,[1,1]) matches the binomial relation: {agree}")


def test_criterion_09_integer_sums(acceptance_lines, suite_256):
    reps = suite_256["lll"]
    ok = len(reps) == 3 and all_pass(reps)
    assert record(acceptance_lines, 9, ok, f"3 points, worst residual {mp.nstr(worst(reps), 3)}")


def test_criterion_10_euler_decomposition(acceptance_lines, suite_256):
    reps = [pick(suite_256["euler"], r=r, k=k) for r, k in [(1, 1), (1, 2), (2, 2)]]
    ok = all_pass(reps)
    assert record(acceptance_lines, 10, ok, f"3 points, worst residual {mp.nstr(worst(reps), 3)}")


def test_criterion_11_continuation_probe(acceptance_lines, suite_256):
    reps = suite_256["ac1"]
    ok = len(reps) == 9 and all_pass(reps)
    ratios = [float(q) for r in reps for q in r.details["error_ratios"]]
    assert record(acceptance_lines, 11, ok,
                  f"9 probes linear in h (ratios {min(ratios):.4g}..{max(ratios):.4g}), "
                  f"worst residual {mp.nstr(worst(reps), 3)}")


def test_criterion_12_exact_layer(acceptance_lines):
    bern_ok = akmt_coefficients((1,), 50) == bernoulli_numbers(50)
    rng = random.Random(20240612)
    lemma_ok = True
    for _ in range(25):
        r = rng.randint(1, 4)
        index = IndexVector(tuple(rng.randint(1, 4) for _ in range(r)), rng.randint(1, 4))
        lemma_ok &= check_lemma_aaaa(index, rng.randint(r, 40))
    ok = bern_ok and lemma_ok
    assert record(acceptance_lines, 12, ok,
                  f"Bernoulli m <= 50: {bern_ok}; derivative rule on 25 random indices: {lemma_ok}")


def _random_mt_arguments(n, seed):
    rng = random.Random(seed)
    out = []
    while len(out) < n:
        r = rng.randint(1, 3)
        ex = tuple(rng.randint(0, 3) for _ in range(r))
        s = rng.choice([2, 3, 4])
        if ex.count(0) < s and mt_convergent(list(ex), s):
            out.append((ex, s))
    return out


def test_criterion_13_oracle_equivalence(acceptance_lines):
    bad = []
    for ex, s in _random_mt_arguments(30, seed=7):
        fast = mt_zeta_fast(ex, s, prec=PREC)
        oracle = mt_zeta_oracle(list(ex), s, prec=PREC)
        with mp.workprec(WP):
            if abs(fast.estimate - oracle.estimate) > fast.abs_error + oracle.abs_error:
                bad.append((ex, s))
    ok = not bad
    assert record(acceptance_lines, 13, ok, f"30 random arguments, disagreements: {bad or 'none'}")


@pytest.mark.slow
def test_criterion_14_precision_scaling(acceptance_lines, suite_256):
    problems = []
    count = 0
    for name, reps in suite_256.items():
        higher = run_suite([name], prec=2 * PREC)
        for lo, hi in zip(reps, higher):
            if not lo.passed:
                continue
            count += 1
            # an exactly cancelling 256-bit residual cannot halve; then the 512-bit
            # residual must sit below half of the 256-bit error bound instead
            floor = lo.residual if lo.residual else lo.lhs.abs_error + lo.rhs.abs_error
            if not hi.passed or hi.residual > floor / 2:
                problems.append((name, lo.parameters))
    ok = not problems
    assert record(acceptance_lines, 14, ok,
                  f"{count} passing checks rerun at 512 bits, regressions: {problems or 'none'}")


