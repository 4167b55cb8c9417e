import dataclasses

import pytest
from mpmath import mpf

from mtzeta.identities import (
    DEFAULT_GRIDS,
    SUITES,
    CheckReport,
    check_ac1,
    check_eq75,
    check_euler_decomposition,
    check_lll,
    check_mr1,
    check_mr2,
    check_mr2_display,
    check_mr3,
    check_mr4,
    check_mtval,
    run_suite,
)
from mtzeta.numerics import DomainError, ValueWithError

P = 128


def test_run_suite_plumbing():
    assert run_suite([]) == []
    with pytest.raises(KeyError):
        run_suite(["nope"])
    reps = run_suite(["mtval"], prec=P)
    assert len(reps) == 4 and all(r.passed for r in reps)
    assert [r.parameters["m"] for r in reps] == [0, 1, 2, 3]


def test_run_suite_respects_grid_override_and_order():
    reps = run_suite(["mr3", "mtval"], prec=P, grids={"mtval": [{"m": 1}]})
    assert [r.identity_id for r in reps] == ["mr3", "mr3", "mtval"]


def test_default_grids_cover_every_suite():
    assert set(DEFAULT_GRIDS) == set(SUITES)


def test_passed_is_derived_from_fields():
    rep = check_mtval(1, prec=P)
    assert rep.passed
    moved = ValueWithError(rep.lhs.estimate + mpf("1e-5"), rep.lhs.abs_error, True)
    bad = dataclasses.replace(rep, lhs=moved)
    assert not bad.passed
    assert dataclasses.replace(bad, slack=mpf("1e-3")).passed
    failing_condition = dataclasses.replace(rep, conditions=(("x", False),))
    assert not failing_condition.passed


def test_report_fields():
    rep = check_mr3(1, prec=P)
    assert isinstance(rep, CheckReport)
    assert rep.rigorous and rep.asserted
    assert rep.budget >= rep.slack == mpf("1e-10")
    assert rep.residual < mpf(10) ** -30


@pytest.mark.parametrize(
    "check,args",
    [
        (check_mr1, (2, 3)),
        (check_mr1, (2, "3+0.5i")),
        (check_mr2, (2, 1)),
        (check_mr3, (2,)),
        (check_mr4, (2, [1], 4)),
        (check_lll, (2, [1, 2])),
        (check_euler_decomposition, (2, 1)),
        (check_eq75, (3, 2)),
        (check_eq75, (1, 2)),
        (check_ac1, ((2,), 1)),
    ],
)
def test_checks_pass_at_low_precision(check, args):
    from mtzeta.numerics import parse_complex

    args = tuple(parse_complex(a) if isinstance(a, str) else a for a in args)
    rep = check(*args, prec=P)
    assert rep.passed, (rep.residual, rep.budget)


def test_display_instance_assertion_policy():
    assert check_mr2_display(3, prec=P).asserted
    small = check_mr2_display(1, prec=P)
    assert not small.asserted


def test_mr2_requires_positive_m():
    with pytest.raises(DomainError):
        check_mr2(2, 0)


def test_eq75_parity():
    with pytest.raises(DomainError):
        check_eq75(2, 2)


def test_ac1_reports_linear_convergence():
    rep = check_ac1((1,), 2, prec=P)
    assert dict(rep.conditions)["linear_in_h"]
    ratios = [float(x) for x in rep.details["error_ratios"]]
    assert all(5 <= q <= 20 for q in ratios)
    assert rep.details["exact"] == "1/6"
    assert not rep.rigorous


def test_tight_slack_can_fail():
    rep = check_ac1((1,), 0, prec=P, slack=0)
    assert rep.slack == 0 and rep.passed
    wrong = dataclasses.replace(rep, rhs=ValueWithError.exact(rep.rhs.estimate + mpf("1e-8")))
    assert not wrong.passed


def test_reports_are_deterministic():
    a = run_suite(["mr3"], prec=P)
    b = run_suite(["mr3"], prec=P)
    assert [(r.lhs, r.rhs, r.parameters) for r in a] == [(r.lhs, r.rhs, r.parameters) for r in b]
