"""Numerical checks of the functional relations between xi_MT and zeta_MT.

Every check evaluates its two sides along different code paths (xi integrals
versus Mordell-Tornheim sums, double zeta sums versus Riemann zeta products)
and returns a :class:`CheckReport`.  No check obtains one side by rewriting
the other with the relation being tested.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import combinations, product
from typing import Callable, Sequence

from mpmath import mp, mpf

from .mteval import (
    bbb_rhs,
    euler_double_zeta,
    mt_zeta_fast,
    xi_mt_continuation_probe,
    xi_mt_eval,
    xi_mt_g_eval,
    xi_mt_negative_integer,
)
from .numerics import (
    GUARD_BITS,
    DomainError,
    ValueWithError,
    from_fraction,
    pochhammer,
    riemann_zeta,
    to_mp,
)
from .series import IndexVector

__all__ = [
    "DEFAULT_SLACK",
    "CheckReport",
    "SUITES",
    "DEFAULT_GRIDS",
    "check_mr1",
    "check_mr2",
    "check_mr2_display",
    "check_mr3",
    "check_mtval",
    "check_mr4",
    "check_lll",
    "check_euler_decomposition",
    "check_eq75",
    "check_ac1",
    "run_suite",
]

DEFAULT_SLACK = mpf("1e-10")


@dataclass(frozen=True)
class CheckReport:
    """Both sides of one identity instance and the resulting verdict.

    ``passed`` is derived from the stored fields each time it is read.
    ``asserted`` is false for instances that are reported but not required
    to hold; ``conditions`` carries extra named requirements (all must be true).
    """

    identity_id: str
    parameters: dict
    lhs: ValueWithError
    rhs: ValueWithError
    slack: mpf = DEFAULT_SLACK
    prec: int = 256
    asserted: bool = True
    conditions: tuple[tuple[str, bool], ...] = ()
    details: dict = field(default_factory=dict)

    @property
    def residual(self) -> mpf:
        return abs(self.lhs.estimate - self.rhs.estimate)

    @property
    def budget(self) -> mpf:
        return self.lhs.abs_error + self.rhs.abs_error + self.slack

    @property
    def rigorous(self) -> bool:
        return self.lhs.rigorous and self.rhs.rigorous

    @property
    def passed(self) -> bool:
        return self.residual <= self.budget and all(ok for _, ok in self.conditions)


def _zeta(s, prec):
    return riemann_zeta(s, prec)


def _mt(exponents, last, prec) -> ValueWithError:
    return mt_zeta_fast(tuple(exponents), last, prec=prec)


def _sum(values) -> ValueWithError:
    total = ValueWithError.exact(0)
    for v in values:
        total = total + v
    return total


def _slack(slack):
    return DEFAULT_SLACK if slack is None else to_mp(slack)


def _report(identity_id, params, lhs, rhs, slack, prec, **kw) -> CheckReport:
    return CheckReport(identity_id, params, lhs, rhs, _slack(slack), prec, **kw)


# --------------------------------------------------------------------------


def check_mr1(r: int, s, prec: int = 256, slack=None) -> CheckReport:
    """Binomial relation between xi_MT(2,...,2; s) and zeta_MT,r(..., 0; s + j).

    Left side: xi integrals (plus zeta(s) for the empty index).  Right side:
    Mordell-Tornheim sums with a zero exponent, via the Dirichlet fast path.
    """
    if r < 1:
        raise ValueError("r must be >= 1")
    with mp.workprec(prec + GUARD_BITS):
        s = to_mp(s)
        z2 = _zeta(2, prec)
        lhs, rhs = [], []
        for j in range(r):
            c = math.comb(r - 1, j)
            xi = _zeta(s, prec) if j == 0 else xi_mt_eval((2,) * j, s, prec=prec)
            term = xi * c * (-1) ** j
            for _ in range(r - 1 - j):
                term = term * z2
            lhs.append(term)
            ex = (2,) * (r - 1 - j) + (1,) * j + (0,)
            rhs.append(_mt(ex, s + j, prec) * pochhammer(s, j, prec) * c)
        return _report("mr1", {"r": r, "s": s}, _sum(lhs), _sum(rhs), slack, prec)


def check_mr2(r: int, m: int, prec: int = 256, slack=None) -> CheckReport:
    """Values at s = m + 1 of the binomial relation; all terms are MT sums.

    The j = 0 term on the left uses zeta_MT,m(1,...,1; 1) as written, so
    ``m >= 1`` is required (the empty sum has no agreed meaning).
    """
    if r < 1 or m < 1:
        raise DomainError("check_mr2 needs r >= 1 and m >= 1")
    with mp.workprec(prec + GUARD_BITS):
        z2 = _zeta(2, prec)
        fact = math.factorial(m)
        lhs, rhs = [], []
        for j in range(r):
            c = math.comb(r - 1, j)
            term = _mt((2,) * j + (1,) * m, 1, prec) * (mpf(c) * (-1) ** j / fact)
            for _ in range(r - 1 - j):
                term = term * z2
            lhs.append(term)
            ex = (2,) * (r - 1 - j) + (1,) * j + (0,)
            rhs.append(_mt(ex, m + 1 + j, prec) * (c * math.prod(range(m + 1, m + 1 + j))))
        return _report("mr2", {"r": r, "m": m}, _sum(lhs), _sum(rhs), slack, prec)


def check_mr2_display(m: int, prec: int = 256, slack=None, asserted: bool | None = None) -> CheckReport:
    """The three-term instance written with zeta(m+1) in place of the depth-m sum.

    Stated for ``m >= 3``; smaller m are reported without being asserted.
    """
    if m < 1:
        raise DomainError("m must be >= 1")
    with mp.workprec(prec + GUARD_BITS):
        z2 = _zeta(2, prec)
        fact = math.factorial(m)
        lhs = _sum([
            z2 * z2 * _zeta(m + 1, prec),
            -z2 * _mt((2,) + (1,) * m, 1, prec) * (mpf(2) / fact),
            _mt((2, 2) + (1,) * m, 1, prec) * (mpf(1) / fact),
        ])
        rhs = _sum([
            _mt((2, 2, 0), m + 1, prec),
            _mt((2, 1, 0), m + 2, prec) * (2 * (m + 1)),
            _mt((1, 1, 0), m + 3, prec) * ((m + 1) * (m + 2)),
        ])
        if asserted is None:
            asserted = m >= 3
        return _report("mr2_display", {"m": m}, lhs, rhs, slack, prec, asserted=asserted)


def _mr3_rhs(k: int, prec: int) -> ValueWithError:
    z = lambda n: _zeta(n, prec)  # noqa: E731
    terms = [z(2) * z(2 * k + 1), z(2 * k + 3) * (-mpf(2 * k * k + k - 2) / 2)]
    for n in range(1, k):
        terms.append(z(2 * n + 1) * z(2 * k + 2 - 2 * n) * (2 * k + 1 - 2 * n))
    return _sum(terms) * math.factorial(2 * k)


def check_mr3(k: int, prec: int = 256, slack=None) -> CheckReport:
    """zeta_MT,2k+1(2, 1, ..., 1; 1) against its closed form in Riemann zeta values."""
    if k < 1:
        raise ValueError("k must be >= 1")
    with mp.workprec(prec + GUARD_BITS):
        lhs = _mt((2,) + (1,) * (2 * k), 1, prec)
        return _report("mr3", {"k": k}, lhs, _mr3_rhs(k, prec), slack, prec)


def check_mtval(m: int, prec: int = 256, slack=None) -> CheckReport:
    """zeta_MT,m+1(1, ..., 1; 1) = (m+1)! zeta(m+2)."""
    if m < 0:
        raise ValueError("m must be >= 0")
    with mp.workprec(prec + GUARD_BITS):
        lhs = _mt((1,) * (m + 1), 1, prec)
        rhs = _zeta(m + 2, prec) * math.factorial(m + 1)
        return _report("mtval", {"m": m}, lhs, rhs, slack, prec)


def _ones_index(r: int) -> IndexVector:
    return IndexVector((1,) * r, 1)


def check_mr4(N: int, rvec: Sequence[int], s, prec: int = 256, slack=None) -> CheckReport:
    """Inclusion-exclusion relation for xi_MT,n with Lambda factors.

    Left side: xi_MT,n integrals times evaluated MT values zeta_MT,r(1,...,1; 1)
    (not replaced by their closed form).  Right side: zeta_MT,N sums over all
    compositions ``0 <= i_l <= r_l``.
    """
    rvec = tuple(int(x) for x in rvec)
    if N < 1 or len(rvec) != N - 1 or any(x < 1 for x in rvec):
        raise ValueError("need N >= 1 and N - 1 positive entries in rvec")
    with mp.workprec(prec + GUARD_BITS):
        s = to_mp(s)
        idx = range(N - 1)
        mtones = [_mt((1,) * rj, 1, prec) for rj in rvec]
        lhs = []
        for n in range(N):
            for J in combinations(idx, n):
                if J:
                    xi = xi_mt_g_eval([_ones_index(rvec[j]) for j in J], s, prec=prec)
                else:
                    xi = _zeta(s, prec)
                term = xi * (-1) ** n
                for j in idx:
                    if j not in J:
                        term = term * mtones[j]
                lhs.append(term)
        rhs = []
        for i in product(*[range(rj + 1) for rj in rvec]):
            n = sum(i)
            coef = math.prod(math.comb(rj, ij) * math.factorial(rj - ij) for rj, ij in zip(rvec, i))
            ex = tuple(rj - ij + 1 for rj, ij in zip(rvec, i)) + (0,)
            rhs.append(_mt(ex, s + n, prec) * pochhammer(s, n, prec) * coef)
        params = {"N": N, "rvec": list(rvec), "s": s}
        return _report("mr4", params, _sum(lhs), _sum(rhs), slack, prec)


def check_lll(g: int, rvec: Sequence[int], prec: int = 256, slack=None) -> CheckReport:
    """Sum of xi_MT,g-1 values at integers against a product of MT values."""
    rvec = tuple(int(x) for x in rvec)
    if g < 1 or len(rvec) != g or any(x < 1 for x in rvec):
        raise ValueError("need g >= 1 and g positive entries in rvec")
    with mp.workprec(prec + GUARD_BITS):
        lhs = []
        for j, rj in enumerate(rvec):
            rest = [_ones_index(r) for i, r in enumerate(rvec) if i != j]
            xi = xi_mt_g_eval(rest, rj + 1, prec=prec)
            lhs.append(xi * math.factorial(rj))
        rhs = ValueWithError.exact(1)
        for rj in rvec:
            rhs = rhs * _mt((1,) * rj, 1, prec)
        return _report("lll", {"g": g, "rvec": list(rvec)}, _sum(lhs), rhs, slack, prec)


def check_euler_decomposition(r: int, k: int, prec: int = 256, slack=None) -> CheckReport:
    """zeta(k+1) zeta(r+1) as a binomial sum of double zeta values."""
    if r < 1 or k < 1:
        raise ValueError("r and k must be >= 1")
    with mp.workprec(prec + GUARD_BITS):
        lhs = _zeta(k + 1, prec) * _zeta(r + 1, prec)
        terms = []
        for m in range(k + 1):
            terms.append(euler_double_zeta(k + 1 - m, r + 1 + m, prec) * math.comb(r + m, r))
        for n in range(r + 1):
            terms.append(euler_double_zeta(r + 1 - n, k + 1 + n, prec) * math.comb(k + n, k))
        return _report("euler", {"r": r, "k": k}, lhs, _sum(terms), slack, prec)


def check_eq75(a: int, b: int, prec: int = 256, slack=None) -> CheckReport:
    """Direct double zeta sum against the odd-weight closed form."""
    if (a + b) % 2 == 0:
        raise DomainError("the closed form needs odd weight a + b")
    with mp.workprec(prec + GUARD_BITS):
        lhs = euler_double_zeta(a, b, prec)
        rhs = bbb_rhs(a, b, prec)
        return _report("eq75", {"a": a, "b": b}, lhs, rhs, slack, prec)


RATIO_STEPS = (mpf("1e-4"), mpf("1e-5"), mpf("1e-6"))


def _extrapolate_to_zero(xs, ys):
    """Value at 0 of the polynomial through ``(xs, ys)`` (Neville's scheme)."""
    p = list(ys)
    n = len(p)
    for level in range(1, n):
        for i in range(n - level):
            p[i] = (xs[i + level] * p[i] - xs[i] * p[i + 1]) / (xs[i + level] - xs[i])
    return p[0]


def _lagrange_weight_sum(xs) -> mpf:
    total = mpf(0)
    for i, xi in enumerate(xs):
        w = mpf(1)
        for j, xj in enumerate(xs):
            if j != i:
                w *= xj / (xj - xi)
        total += abs(w)
    return total


def check_ac1(index, m: int, prec: int = 256, slack=None) -> CheckReport:
    """Continuation of xi_MT near s = -m against the exact rational value.

    The probe xi_MT(k; -m + h) is evaluated for h = 10^-4, 10^-5, ... ; the
    first three must approach the target linearly in h (successive error
    ratios within a factor 2 of 10), and polynomial extrapolation to h = 0
    must match the exact value.  Probes run at half the requested precision
    and enough steps are taken for an extrapolation error near 2^(-prec/4).
    """
    idx = index if isinstance(index, IndexVector) else IndexVector.parse(index)
    idx.require_positive()
    if m < 0:
        raise ValueError("m must be >= 0")
    exact = xi_mt_negative_integer(idx, m)
    probe_prec = max(prec // 2, 64)
    target_digits = prec * math.log10(2) / 4
    steps, digits = 0, 0
    while digits < target_digits:
        digits += 4 + steps
        steps += 1
    steps = max(steps, 3)
    with mp.workprec(prec + GUARD_BITS):
        hs = [mpf(10) ** -(4 + i) for i in range(steps)]
        probes = [xi_mt_continuation_probe(idx, m, h, prec=probe_prec) for h in hs]
        target = from_fraction(exact)
        errs = [abs(p.estimate - target) for p in probes[:3]]
        ratios = [errs[i] / errs[i + 1] if errs[i + 1] else mp.inf for i in range(2)]
        linear = all(5 <= q <= 20 for q in ratios)
        ys = [p.estimate for p in probes]
        value = _extrapolate_to_zero(hs, ys)
        previous = _extrapolate_to_zero(hs[:-1], ys[:-1])
        noise = _lagrange_weight_sum(hs) * max(p.abs_error for p in probes)
        lhs = ValueWithError(value, 10 * abs(value - previous) + noise, False)
        rhs = ValueWithError.exact(target)
        details = {
            "probe_steps": [mp.nstr(h, 3) for h in hs[:3]],
            "probe_errors": [mp.nstr(e, 6) for e in errs],
            "error_ratios": [mp.nstr(q, 6) for q in ratios],
            "exact": str(exact),
        }
        params = {"k": list(idx.entries), "m": m}
        return _report(
            "ac1", params, lhs, rhs, slack, prec,
            conditions=(("linear_in_h", linear),), details=details,
        )


# --------------------------------------------------------------------------

SUITES: dict[str, Callable[..., CheckReport]] = {
    "mtval": check_mtval,
    "mr1": check_mr1,
    "mr2": check_mr2,
    "mr2_display": check_mr2_display,
    "mr3": check_mr3,
    "mr4": check_mr4,
    "lll": check_lll,
    "euler": check_euler_decomposition,
    "eq75": check_eq75,
    "ac1": check_ac1,
}

# Frozen default parameter grids (keyword arguments per instance).
DEFAULT_GRIDS: dict[str, list[dict]] = {
    "mtval": [{"m": m} for m in range(4)],
    "mr1": [
        {"r": 1, "s": "3"},
        {"r": 2, "s": "3"},
        {"r": 2, "s": "7/2"},
        {"r": 3, "s": "4"},
        {"r": 3, "s": "7/2"},
        {"r": 3, "s": "3+0.5i"},
    ],
    "mr2": [{"r": 1, "m": 2}, {"r": 2, "m": 1}, {"r": 2, "m": 2}, {"r": 2, "m": 3}, {"r": 3, "m": 3}],
    "mr2_display": [{"m": 3}, {"m": 1}, {"m": 2}],
    "mr3": [{"k": 1}, {"k": 2}],
    "mr4": [
        {"N": 1, "rvec": [], "s": "4"},
        {"N": 2, "rvec": [1], "s": "4"},
        {"N": 2, "rvec": [2], "s": "4"},
        {"N": 3, "rvec": [1, 1], "s": "9/2"},
    ],
    "lll": [{"g": 1, "rvec": [1]}, {"g": 2, "rvec": [1, 1]}, {"g": 2, "rvec": [1, 2]}],
    "euler": [{"r": 1, "k": 1}, {"r": 1, "k": 2}, {"r": 2, "k": 1}, {"r": 2, "k": 2}],
    "eq75": [{"a": 2, "b": 3}, {"a": 3, "b": 2}, {"a": 4, "b": 3}, {"a": 1, "b": 2}],
    "ac1": [{"index": list(k), "m": m} for k in ((1,), (2,), (1, 1)) for m in range(3)],
}


def _prepare(suite: str, params: dict) -> dict:
    out = dict(params)
    if "s" in out:
        out["s"] = to_mp(out["s"]) if not isinstance(out["s"], str) else _parse_s(out["s"])
    if "index" in out:
        out["index"] = IndexVector(tuple(out["index"]))
    return out


def _parse_s(text: str):
    from .numerics import parse_complex

    return parse_complex(text)


def run_suite(
    selection: Sequence[str],
    prec: int = 256,
    slack=None,
    grids: dict[str, list[dict]] | None = None,
) -> list[CheckReport]:
    """Run the selected checks over their grids, in the order given."""
    unknown = [s for s in selection if s not in SUITES]
    if unknown:
        raise KeyError(f"unknown identity id(s): {', '.join(unknown)}")
    reports = []
    for name in selection:
        grid = (grids or {}).get(name, DEFAULT_GRIDS[name])
        for params in grid:
            kwargs = _prepare(name, params)
            with mp.workprec(prec + GUARD_BITS):
                rep = SUITES[name](**kwargs, prec=prec, slack=slack)
            reports.append(rep)
    return reports
