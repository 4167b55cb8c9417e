"""Evaluators for Mordell-Tornheim zeta values and the xi-functions.

Mordell-Tornheim sums
    ``zeta_MT,r(s_1..s_r; s) = sum m_1^{-s_1} ... m_r^{-s_r} (m_1+...+m_r)^{-s}``
are evaluated two ways:

* :func:`mt_zeta_oracle` sums the lattice points directly with a majorant tail.
* :func:`mt_zeta_fast` (integer exponents) writes the value as the Mellin
  transform of ``F(t) = prod_j Li_{s_j}(e^{-t}) = sum_M a_M e^{-M t}`` and splits
  at ``t = tau``: the head is integrated term by term from the log-power
  expansion of ``F`` at 0, the tail is ``sum_M a_M M^{-s} Gamma(s, M tau)``.

The xi-functions are Mellin transforms of
``H(t) = prod_i Lambda_{k_i}(1 - e^{-t}) / (e^t - 1)``.  On ``[0, tau]`` the exact
Taylor series of ``H`` is integrated termwise (this also continues the function
to all of C); on ``[tau, oo)`` ``H`` is expanded in ``q = e^{-t}`` with powers of
``t`` and integrated by tanh-sinh quadrature.
"""
from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np
from mpmath import mp, mpc, mpf

from .expansions import (
    LogQSeries,
    li_exp_neg_expansion,
    li_exp_neg_majorant,
    li_one_minus_q,
)
from .numerics import (
    GUARD_BITS,
    DomainError,
    PrecisionError,
    ValueWithError,
    _gamma,
    _hurwitz,
    from_fraction,
    to_mp,
)
from .series import (
    IndexVector,
    akmt_coefficients,
    akmt_series,
    bernoulli,
    lambda_u_series,
    series_div_by_expm1,
    series_mul,
    TruncatedSeries,
)

__all__ = [
    "mt_zeta_oracle",
    "mt_zeta_fast",
    "mt_convergent",
    "xi_mt_eval",
    "xi_mt_g_eval",
    "xi_mt_negative_integer",
    "xi_mt_continuation_probe",
    "lambda_eval",
    "euler_double_zeta",
    "bbb_rhs",
    "DOUBLE_ZETA_CONVENTION",
]

DEFAULT_SPLIT = 1

#: The ordering under which the odd-weight double zeta closed form holds.
DOUBLE_ZETA_CONVENTION = "zeta(a, b) = sum_{0 < m < n} m^-a n^-b"


def _index(x) -> IndexVector:
    if isinstance(x, IndexVector):
        return x
    if isinstance(x, int):
        return IndexVector((x,))
    return IndexVector.parse(x)


# --------------------------------------------------------------------------
# convergence


def mt_convergent(exponents: Sequence, last) -> bool:
    """Absolute convergence of the Mordell-Tornheim sum.

    The sum converges absolutely iff for every nonempty subset J of the slots,
    ``Re(sum_{j in J} s_j + s_last) > |J|``.
    """
    re = [float(mp.re(to_mp(s))) for s in exponents]
    re_last = float(mp.re(to_mp(last)))
    r = len(re)
    for size in range(1, r + 1):
        # the weakest subset of a given size uses the smallest real parts
        if sum(sorted(re)[:size]) + re_last <= size:
            return False
    return True


def _coefficient_majorant(exponents_re: Sequence[float]) -> tuple[float, int, int]:
    """``(c, q, beta)`` with ``a_M <= c (1 + log M)^q M^beta`` for all ``M >= 1``.

    Slots with real part >= 1 are bounded by ``1/m`` and the rest by 1.  For p
    slots of the first kind, ``sum_{compositions} prod 1/m_j <= p H_{M-1}^{p-1}/M``.
    """
    r = len(exponents_re)
    p = sum(1 for x in exponents_re if x >= 1)
    z = r - p
    if any(x < 0 for x in exponents_re):
        raise DomainError("negative real parts are not supported by the majorant")
    if z == 0:
        return float(r), r - 1, -1
    if p == 0:
        return 1.0 / math.factorial(r - 1), 0, r - 1
    return p / math.factorial(z - 1), p, z - 1


def _log_power_tail(c, q: int, alpha, X) -> mpf:
    """Bound on ``sum_{N > X} c (1 + log N)^q N^-alpha`` (alpha > 1).

    Compared with ``int_X^oo``; valid once the summand is decreasing.
    """
    alpha = mpf(alpha)
    if alpha <= 1:
        return mp.inf
    X = max(mpf(X), mp.exp(mpf(q) / (alpha - 1)))
    a1 = alpha - 1
    return c * mp.e ** a1 * a1 ** (-q - 1) * mp.gammainc(q + 1, a1 * (1 + mp.log(X)))


# --------------------------------------------------------------------------
# direct summation oracle

_DEFAULT_CUTOFF = {1: 200000, 2: 3000, 3: 300, 4: 90}


def mt_zeta_oracle(
    exponents: Sequence,
    last,
    cutoff: int | None = None,
    prec: int = 256,
    tol=None,
) -> ValueWithError:
    """Direct lattice sum over ``m_1 + ... + m_r <= cutoff`` plus a tail bound.

    Slow and low-accuracy by design (double-precision partial sums); it shares
    nothing with :func:`mt_zeta_fast`.
    """
    r = len(exponents)
    if not 1 <= r <= 4:
        raise DomainError("the oracle handles 1 <= r <= 4")
    wp = prec + GUARD_BITS
    with mp.workprec(wp):
        ex = [complex(to_mp(s)) for s in exponents]
        sl = complex(to_mp(last))
        if not mt_convergent(exponents, last):
            raise DomainError("arguments outside the region of absolute convergence")
        X = cutoff or _DEFAULT_CUTOFF[r]
        c, q, beta = _coefficient_majorant([e.real for e in ex])
        tail = _log_power_tail(c, q, sl.real - beta, X)
        if tail == mp.inf:
            raise DomainError("no usable tail majorant for these exponents; use mt_zeta_fast")
        if tol is not None and tail > mpf(tol):
            raise PrecisionError(
                f"tail bound {mp.nstr(tail, 3)} exceeds tol; raise the cutoff above {X}"
            )
        total, abs_sum, count = _lattice_sum(ex, sl, X)
        rounding = mpf(abs_sum) * count * 2.0**-52
        return ValueWithError(mpc(total.real, total.imag), tail + rounding, True)


def _lattice_sum(ex: list[complex], sl: complex, X: int):
    logs = np.log(np.arange(1, X + 1, dtype=float))
    pw = [np.exp(-e * logs) for e in ex]  # pw[j][m-1] = m^{-s_j}
    tot = np.exp(-sl * logs)  # (sum m)^{-s}
    r = len(ex)
    total = 0j
    abs_sum = 0.0
    count = 0

    def rec(j: int, used: int, weight: complex):
        nonlocal total, abs_sum, count
        remaining = r - j
        room = X - used - (remaining - 1)
        if remaining == 1:
            # last slot: m = 1..room, total index used + m
            terms = weight * pw[j][:room] * tot[used: used + room]
            total += terms.sum()
            abs_sum += np.abs(terms).sum()
            count += room
            return
        if remaining == 2:
            for a in range(1, room):
                width = room - a
                terms = weight * pw[j][a - 1] * pw[j + 1][:width] * tot[used + a: used + a + width]
                total += terms.sum()
                abs_sum += np.abs(terms).sum()
                count += width
            return
        for a in range(1, room + 1):
            rec(j + 1, used + a, weight * pw[j][a - 1])

    rec(0, 0, 1.0 + 0j)
    return total, abs_sum, count


# --------------------------------------------------------------------------
# fast path for integer exponents


def _dirichlet_coefficients(exponents: tuple[int, ...], M: int, wp: int) -> list:
    """``a_0 .. a_M`` of ``prod_j Li_{k_j}(x) = sum a_M x^M`` in floating point."""
    return list(_dirichlet_cached(tuple(sorted(exponents)), M, wp))


@lru_cache(maxsize=64)
def _dirichlet_cached(exponents: tuple[int, ...], M: int, wp: int):
    with mp.workprec(wp):
        acc = [mpf(1)] + [mpf(0)] * M
        for k in exponents:
            seq = [mpf(0)] + [mpf(m) ** (-k) for m in range(1, M + 1)]
            new = [mpf(0)] * (M + 1)
            for i, ai in enumerate(acc):
                if not ai:
                    continue
                for m in range(1, M + 1 - i):
                    new[i + m] += ai * seq[m]
            acc = new
        return tuple(acc)


def _head_order(wp: int, tau) -> int:
    return int(wp * math.log(2) / math.log(2 * math.pi / float(tau))) + 8


@lru_cache(maxsize=64)
def _small_t_product(exponents: tuple[int, ...], order: int, wp: int):
    with mp.workprec(wp):
        f = None
        for k in exponents:
            g = li_exp_neg_expansion(k, order, wp)
            f = g if f is None else f * g
        A = mpf(1)
        for k in exponents:
            A *= li_exp_neg_majorant(k, order, wp)
        return f, A


def _head_tail_bound(A, r: int, n_logs: int, zeros: int, sigma, tau, N: int) -> mpf:
    """Bound on the head-integral terms with shifted index n > N.

    Coefficients satisfy |c_{p,n}| <= A C(n+r-1, r-1) C(n_logs, p) (2 pi)^-n, and
    for tau <= 1, |int_0^tau t^(a-1) log^p t| <= p! tau^(a-1) / a when a >= 1.
    """
    tau = mpf(tau)
    n = N + 1
    a = sigma + n - zeros
    if a < 1:
        raise PrecisionError("head expansion order too small for this s")
    K = sum(math.comb(n_logs, p) * math.factorial(p) for p in range(n_logs + 1))
    first = A * math.comb(n + r - 1, r - 1) * (tau / (2 * mp.pi)) ** n * tau ** (sigma - zeros - 1) * K / a
    rho = tau / (2 * mp.pi) * (1 + mpf(r - 1) / (n + 1))
    if rho >= 1:
        return mp.inf
    return first / (1 - rho)


def _gamma_tail_terms(c, q, beta, sigma, tau, M0):
    """Majorant of ``sum_{M > M0} a_M |M^-s Gamma(s, M tau)|``."""
    tau = mpf(tau)

    def term(M):
        x = M * tau
        corr = 1
        if sigma > 1:
            if x <= sigma - 1:
                return mp.inf
            corr = 1 / (1 - (sigma - 1) / x)
        return c * (1 + mp.log(M)) ** q * mpf(M) ** (beta - sigma) * x ** (sigma - 1) * mp.exp(-x) * corr

    M = M0 + 1
    rho = mp.exp(-tau) * (1 + mpf(1) / M) ** (max(beta - 1, 0) + q + max(sigma - 1, 0))
    if rho >= 1:
        return mp.inf
    return term(M) / (1 - rho)


def mt_zeta_fast(
    exponents: Sequence[int],
    s,
    prec: int = 256,
    tau=DEFAULT_SPLIT,
    m_max: int | None = None,
) -> ValueWithError:
    """``zeta_MT,r(k_1..k_r; s)`` for integer ``k_j >= 0`` and ``Re(s) > #{k_j = 0}``."""
    return _mt_fast(tuple(int(k) for k in exponents), s, prec + GUARD_BITS, tau, m_max)


def _mt_fast(exponents: tuple[int, ...], s, wp: int, tau=DEFAULT_SPLIT, m_max=None) -> ValueWithError:
    if not exponents:
        raise DomainError("need at least one exponent")
    if any(k < 0 for k in exponents):
        raise DomainError("fast path needs nonnegative integer exponents")
    with mp.workprec(wp):
        s = to_mp(s)
        sigma = mp.re(s)
        tau = to_mp(tau)
        if not 0 < tau <= 1:
            raise ValueError("split point must lie in (0, 1]")
        zeros = sum(1 for k in exponents if k == 0)
        if sigma <= zeros or sigma <= 0:
            raise DomainError(
                f"fast path needs Re(s) > max(0, number of zero exponents) = {zeros}"
            )
        if not mt_convergent(exponents, s):
            raise DomainError("arguments outside the region of absolute convergence")
        r = len(exponents)
        key = tuple(sorted(exponents))
        target = mpf(2) ** (-wp)

        # head: int_0^tau t^(s-1) F(t) dt
        N = _head_order(wp, tau)
        F, A = _small_t_product(key, N, wp)
        head = F.mellin_head(s, tau)
        n_logs = F.log_degree
        head_err = _head_tail_bound(A, r, n_logs, zeros, sigma, tau, N)

        # tail: sum_M a_M M^-s Gamma(s, M tau)
        c, q, beta = _coefficient_majorant([float(k) for k in exponents])
        M0 = r
        while True:
            bound = _gamma_tail_terms(c, q, beta, sigma, tau, M0)
            if bound < target:
                break
            M0 += 8
            if m_max is None and M0 > 40 * wp:
                raise PrecisionError("tail did not converge; this should not happen")
        if m_max is not None:
            if m_max < M0:
                raise PrecisionError(
                    f"m_max={m_max} leaves tail bound "
                    f"{mp.nstr(_gamma_tail_terms(c, q, beta, sigma, tau, m_max), 3)}; "
                    f"use m_max >= {M0}"
                )
            M0 = m_max
        tail_err = _gamma_tail_terms(c, q, beta, sigma, tau, M0)
        a = _dirichlet_coefficients(key, M0, wp)
        terms = []
        is_int_s = mp.im(s) == 0 and mp.isint(sigma)
        for M in range(r, M0 + 1):
            if not a[M]:
                continue
            x = M * tau
            if is_int_s:
                g = mp.gammainc(int(sigma), x)
            else:
                g = mp.gammainc(s, x)
            terms.append(a[M] * mp.power(M, -s) * g)
        tail = mp.fsum(terms)

        G = _gamma(s, wp)
        total = ValueWithError(head + tail, head_err + tail_err + (abs(head) + abs(tail)) * 2 ** (8 - wp), True)
        return total / G


# --------------------------------------------------------------------------
# xi functions


def _xi_order(wp: int, tau) -> int:
    return int(wp * math.log(2) / math.log(math.pi / float(tau))) + 12


def _q_order(wp: int, tau) -> int:
    return int(wp * math.log(2) / float(tau)) + 24


@lru_cache(maxsize=None)
def _lambda_q_series(index: IndexVector, order: int, wp: int, tau_key: str, t_order: int) -> LogQSeries:
    """``Lambda_k(1 - e^{-t})`` as a q-series; integration constants matched at t = tau."""
    tau = mp.mpmathify(tau_key)
    with mp.workprec(wp):
        tail = index.tail or 0
        if tail == 0:
            f = None
            for k in sorted(index.entries):
                g = li_one_minus_q(k, order, wp)
                f = g if f is None else f * g
            return f
        lower = _lambda_q_series(index.lowered(), order, wp, tau_key, t_order)
        integ = lower.over_one_minus_q().integral_from_zero()
        # Lambda(t) = K - integ(q); choose K so both expansions agree at t = tau
        at_tau = _eval_t_series(lambda_u_series(index, t_order), tau)
        K = at_tau + integ(tau)
        return LogQSeries.constant(K, order) + integ.scale(-1)


def _eval_t_series(series: TruncatedSeries, t):
    coeffs = [from_fraction(c) for c in series.coeffs]
    return mp.polyval(coeffs[::-1], t)


@lru_cache(maxsize=64)
def _integrand_parts(indices: tuple[IndexVector, ...], wp: int, tau_key: str):
    tau = mp.mpmathify(tau_key)
    with mp.workprec(wp):
        N = _xi_order(wp, tau)
        Nq = _q_order(wp, tau)
        # exact Taylor series of H(t) through t^N
        if len(indices) == 1 and not indices[0].tail:
            h = akmt_series(indices[0], N)
        else:
            numer = TruncatedSeries.one(N + 1)
            for idx in indices:
                numer = series_mul(numer, lambda_u_series(idx, N + 1))
            h = series_div_by_expm1(numer)
        h_mp = tuple(from_fraction(c) for c in h.coeffs)
        # q-expansion of H(t) = prod Lambda * q/(1-q) for t >= tau
        Q = None
        for idx in indices:
            g = _lambda_q_series(idx, Nq, wp, tau_key, N)
            Q = g if Q is None else Q * g
        Q = Q.times_q().over_one_minus_q()
        return h_mp, Q


def _head_integral(h: Sequence, s, tau):
    """``sum_n h_n tau^(s+n) / (s+n)`` with a heuristic truncation estimate."""
    tau_s = mp.power(tau, s)
    total = 0
    size = mpf(0)
    taun = mpf(1)
    for n, c in enumerate(h):
        if c:
            term = c * taun / (s + n)
            total += term
            size += abs(term)
        taun *= tau
    N = len(h) - 1
    window = range(max(0, N - 20), N + 1)
    A = max(abs(h[n]) * mp.pi**n for n in window)
    ratio = tau / mp.pi
    est = 10 * A * ratio ** (N + 1) * abs(tau_s) / ((1 - ratio) * (mp.re(s) + N + 1))
    est += size * abs(tau_s) * N * mpf(2) ** (1 - mp.prec)
    return total * tau_s, est


def _tail_integral(Q: LogQSeries, s, tau, method: str, wp: int):
    """``int_tau^oo t^(s-1) Q(t) dt``; Q has no constant q^0 term."""
    sigma = mp.re(s)
    deg = Q.degree
    if method == "gamma":
        total = 0
        for n in range(1, Q.order + 1):
            x = n * tau
            # Gamma(s+p, x) by upward recurrence
            g = mp.gammainc(s, x)
            xs = mp.power(x, s) * mp.exp(-x)
            for p in range(deg + 1):
                c = Q.coeffs[p][n]
                if c:
                    total += c * g * mp.power(n, -(s + p))
                g = (s + p) * g + xs
                xs *= x
        est = Q.tail_estimate(tau) * mp.power(tau, sigma - 1) * 4
        return total, est
    if method != "quad":
        raise ValueError("method must be 'quad' or 'gamma'")
    # truncation point: |integrand| <= K t^(sigma-1+deg) e^-t for t >= tau
    qt = mp.exp(-tau)
    K = sum(
        sum(abs(c) * qt ** (n - 1) for n, c in enumerate(row) if n >= 1)
        for row in Q.coeffs
    )
    target = mpf(2) ** (-wp)
    T = mpf(tau) + 1
    while K * mp.gammainc(sigma + deg, T) * max(1, T ** 0) > target:
        T *= 1.25
    points = [mpf(tau)]
    step = mpf(1)
    while points[-1] < T:
        points.append(min(points[-1] + step, T))
        step *= 1.5

    def f(t):
        return mp.power(t, s - 1) * Q(t)

    val, qerr = mp.quad(f, points, error=True, method="tanh-sinh")
    trunc = K * mp.gammainc(sigma + deg, T)
    est = qerr + trunc + Q.tail_estimate(tau) * abs(mp.power(tau, s - 1)) * 4
    return val, est


def _xi_split(indices: tuple[IndexVector, ...], s, wp: int, tau, method: str) -> ValueWithError:
    tau_key = mp.nstr(to_mp(tau), 30)
    with mp.workprec(wp):
        tau = mp.mpmathify(tau_key)
        if not 0 < tau < mp.pi:
            raise ValueError("split point must lie in (0, pi)")
        h, Q = _integrand_parts(indices, wp, tau_key)
        head, head_err = _head_integral(h, s, tau)
        tail, tail_err = _tail_integral(Q, s, tau, method, wp)
        G = _gamma(s, wp)
        rounding = (abs(tail) + 1) * mpf(2) ** (8 - wp)
        body = ValueWithError(head + tail, head_err + tail_err + rounding, False)
        return body / G


def xi_mt_eval(index, s, prec: int = 256, tau=DEFAULT_SPLIT, method: str = "gamma") -> ValueWithError:
    """``xi_MT(k; s) = Gamma(s)^-1 int_0^oo t^(s-1) prod Li_{k_j}(1-e^-t) / (e^t-1) dt``."""
    idx = _index(index).require_positive()
    wp = prec + GUARD_BITS
    with mp.workprec(wp):
        s = to_mp(s)
        if mp.re(s) <= 1 - idx.depth:
            raise DomainError(
                f"integral converges for Re(s) > {1 - idx.depth}; "
                "use xi_mt_negative_integer / xi_mt_continuation_probe beyond it"
            )
        if _is_nonpositive_int(s):
            raise DomainError("s is a nonpositive integer; use xi_mt_negative_integer")
        return _xi_split((IndexVector(tuple(sorted(idx.entries)), 0),), s, wp, tau, method)


def xi_mt_g_eval(indices: Iterable, s, prec: int = 256, tau=DEFAULT_SPLIT, method: str = "gamma") -> ValueWithError:
    """``xi_MT,g`` with a product of Lambda functions; ``g = 0`` gives ``zeta(s)``."""
    idxs = []
    for i in indices:
        i = i if isinstance(i, IndexVector) else IndexVector.lam(i)
        if i.tail is None:
            raise ValueError("xi_MT,g indices need a tail exponent")
        idxs.append(i.require_positive())
    wp = prec + GUARD_BITS
    with mp.workprec(wp):
        s = to_mp(s)
        if not idxs:
            if mp.re(s) <= 1:
                raise DomainError("xi_MT,0 = zeta(s) needs Re(s) > 1")
            return _hurwitz(s, 1, wp)
        R = sum(i.depth for i in idxs)
        if mp.re(s) <= 1 - R:
            raise DomainError(f"integral converges for Re(s) > {1 - R}")
        if _is_nonpositive_int(s):
            raise DomainError("s is a nonpositive integer")
        key = tuple(sorted(idxs, key=lambda i: (i.entries, i.tail)))
        return _xi_split(key, s, wp, tau, method)


def _is_nonpositive_int(s) -> bool:
    return mp.im(s) == 0 and mp.isint(mp.re(s)) and mp.re(s) <= 0


def xi_mt_negative_integer(index, m: int) -> Fraction:
    """``xi_MT(k; -m) = (-1)^m C^k_{m,MT}`` exactly."""
    if m < 0:
        raise ValueError("m must be >= 0")
    idx = _index(index).require_positive()
    return (-1) ** m * akmt_coefficients(idx, m)[m]


def xi_mt_continuation_probe(index, m: int, h, prec: int = 256, tau=DEFAULT_SPLIT) -> ValueWithError:
    """``xi_MT(k; -m + h)`` through the split-Mellin continuation."""
    idx = _index(index).require_positive()
    wp = prec + GUARD_BITS
    with mp.workprec(wp):
        h = to_mp(h)
        if not 0 < abs(h) < 0.5:
            raise ValueError("need 0 < |h| < 1/2")
        s = -m + h
        return _xi_split((IndexVector(tuple(sorted(idx.entries)), 0),), s, wp, tau, "gamma")


# --------------------------------------------------------------------------
# Lambda


def lambda_eval(index, z, prec: int = 256, method: str = "auto") -> ValueWithError:
    """``Lambda_k(z)`` for ``0 <= z < 1``.

    ``method="series"`` sums ``b_M z^M`` with the binomial majorant tail;
    ``"auto"`` switches to expansions in ``t = -log(1 - z)`` above ``z = 1/2``.
    """
    idx = index if isinstance(index, IndexVector) else IndexVector.lam(index)
    if idx.tail is None:
        raise ValueError("lambda_eval needs an index with a tail exponent")
    idx.require_positive()
    wp = prec + GUARD_BITS
    with mp.workprec(wp):
        z = to_mp(z)
        if mp.im(z) != 0 or not 0 <= z < 1:
            raise DomainError("lambda_eval needs 0 <= z < 1")
        if z == 0:
            return ValueWithError(mpf(0), mpf(0), True)
        if method == "series" or (method == "auto" and z <= 0.5):
            return _lambda_series(idx, z, wp)
        if method not in ("auto", "expansion"):
            raise ValueError("method must be 'auto', 'series' or 'expansion'")
        t = -mp.log1p(-z)
        tau = mpf(DEFAULT_SPLIT)
        N = _xi_order(wp, tau)
        if t <= tau:
            ser = lambda_u_series(idx, N)
            val = _eval_t_series(ser, t)
            A = max(abs(from_fraction(ser.coeffs[n])) * mp.pi**n for n in range(N - 20, N + 1))
            est = 10 * A * (t / mp.pi) ** (N + 1) / (1 - t / mp.pi)
            return ValueWithError(val, est + abs(val) * 2 ** (16 - wp), False)
        Nq = _q_order(wp, tau)
        Q = _lambda_q_series(idx, Nq, wp, mp.nstr(tau, 30), N)
        val = Q(t)
        return ValueWithError(val, Q.tail_estimate(t) + (abs(val) + 1) * 2 ** (16 - wp), False)


def _lambda_series(idx: IndexVector, z, wp: int) -> ValueWithError:
    r = idx.depth
    target = mpf(2) ** (-wp)

    def majorant_tail(M):
        # b_n <= C(n-1, r-1) r^-tail; geometric ratio bounded at n = M + 1
        n = M + 1
        first = math.comb(n - 1, r - 1) * mpf(r) ** -(idx.tail) * z**n
        rho = z * (1 + mpf(r - 1) / n)
        return mp.inf if rho >= 1 else first / (1 - rho)

    M = r
    while majorant_tail(M) > target:
        M += 16
    b = _dirichlet_coefficients(idx.entries, M, wp)
    terms = []
    zM = mpf(1)
    for n in range(M + 1):
        if n and b[n]:
            terms.append(b[n] * mpf(n) ** -(idx.tail) * zM)
        zM *= z
    total = mp.fsum(terms)
    return ValueWithError(total, majorant_tail(M) + abs(total) * 2 ** (8 - wp) * M, True)


# --------------------------------------------------------------------------
# Euler double zeta and the odd-weight closed form


def euler_double_zeta(a: int, b: int, prec: int = 256) -> ValueWithError:
    """``zeta(a, b) = sum_{0 < m < n} m^-a n^-b`` for ``a >= 1``, ``b >= 2``.

    Direct sum over ``n < N`` with exact inner partial sums, then the outer tail
    from the asymptotic expansion of the inner sum and Hurwitz zeta values.
    """
    if a < 1 or b < 2:
        raise DomainError("euler_double_zeta needs a >= 1 and b >= 2")
    return _double_zeta(a, b, prec + GUARD_BITS)


@lru_cache(maxsize=None)
def _double_zeta(a: int, b: int, wp: int) -> ValueWithError:
    with mp.workprec(wp):
        N = int(wp * math.log(2) / (2 * math.pi)) + 16
        direct = []
        inner = mpf(0)  # sum_{m < n} m^-a
        for n in range(1, N):
            direct.append(inner * mpf(n) ** (-b))
            inner += mpf(n) ** (-a)
        total = ValueWithError(mp.fsum(direct), abs(mp.fsum(direct)) * N * 2 ** (4 - wp), True)

        target = mpf(2) ** (-wp)
        twopi = 2 * mp.pi
        if a >= 2:
            # inner(n) = zeta(a) - zeta_H(a, n)
            za = _hurwitz(mpf(a), 1, wp)
            total += za * _hurwitz(mpf(b), N, wp)
            total -= _hurwitz(mpf(a + b - 1), N, wp) / (a - 1)
            total -= _hurwitz(mpf(a + b), N, wp) / 2
            poch = mpf(a)  # (a)_{2j-1}
            j = 1
            while True:
                c = from_fraction(bernoulli(2 * j)) / math.factorial(2 * j) * poch
                total -= _hurwitz(mpf(a + b + 2 * j - 1), N, wp) * c
                # remainder after j terms: 4 (a)_{2j} / (2 pi)^{2j} n^{1-a-2j} / (a+2j-1)
                rem = 4 * poch * (a + 2 * j - 1) / twopi ** (2 * j) / (a + 2 * j - 1)
                poch *= (a + 2 * j - 1) * (a + 2 * j)
                c_next = a + b + 2 * j - 1
                rem *= mpf(N) ** (-c_next) + mpf(N) ** (1 - c_next) / (c_next - 1)
                j += 1
                if rem < target:
                    break
            return total.widen(rem)
        # a = 1: inner(n) = gamma + log n - 1/(2n) - sum_j B_2j / (2j n^2j)
        total += _hurwitz(mpf(b), N, wp) * mp.euler
        total -= _hurwitz(mpf(b), N, wp, derivative=1)
        total -= _hurwitz(mpf(b + 1), N, wp) / 2
        j = 1
        while True:
            c = from_fraction(bernoulli(2 * j)) / (2 * j)
            total -= _hurwitz(mpf(b + 2 * j), N, wp) * c
            cn = b + 2 * j + 2
            rem = abs(from_fraction(bernoulli(2 * j + 2))) / (2 * j + 2)
            rem *= mpf(N) ** (-cn) + mpf(N) ** (1 - cn) / (cn - 1)
            j += 1
            if rem < target:
                break
        return total.widen(rem)


def bbb_rhs(a: int, b: int, prec: int = 256) -> ValueWithError:
    """Closed form of ``zeta(a, b)`` for odd weight ``a + b`` in Riemann zeta values.

    For ``a = 1`` the ``zeta(a) zeta(b)`` term is dropped.
    """
    M = a + b
    if M % 2 == 0:
        raise DomainError("the closed form needs odd weight a + b")
    if b < 2 or a < 1 or M < 3:
        raise DomainError("the closed form needs a >= 1, b >= 2")
    wp = prec + GUARD_BITS
    with mp.workprec(wp):
        def z(k):
            return _hurwitz(mpf(k), 1, wp)

        sign_b = -1 if b % 2 else 1
        val = z(M) * ((sign_b * math.comb(M, a) - 1))
        if a != 1:
            val += z(a) * z(b) * (1 + sign_b)
        val = val * mpf(0.5)
        acc = ValueWithError.exact(0)
        for k in range(1, (M - 3) // 2 + 1):
            coef = math.comb(2 * k, a - 1) + math.comb(2 * k, b - 1)
            if coef:
                acc += z(2 * k + 1) * z(M - 2 * k - 1) * coef
        return val + acc * (-sign_b)
