"""Floating-point series with logarithmic terms.

Two expansions carry all of the analytic work:

* :class:`LogLaurent` -- ``sum_p log(t)^p sum_n c[p][n] t^(n - offset)`` around
  ``t = 0``; used for ``prod_j Li_{k_j}(e^{-t})``.
* :class:`LogQSeries` -- ``sum_p t^p sum_n c[p][n] q^n`` with ``q = e^{-t}``;
  used for ``Lambda_k(1 - e^{-t})`` when ``t`` is large.

Coefficients are mpmath numbers at the caller's working precision.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from mpmath import mp, mpf

from .numerics import from_fraction, polylog_log_expansion, zeta_int
from .series import bernoulli_numbers

__all__ = ["LogLaurent", "LogQSeries", "li_exp_neg_expansion", "li_one_minus_q"]


@dataclass(frozen=True)
class LogLaurent:
    """``sum_p log(t)^p sum_{n<=order} coeffs[p][n] t^(n - offset)``."""

    coeffs: tuple[tuple, ...]
    offset: int
    order: int

    def __mul__(self, other: "LogLaurent") -> "LogLaurent":
        order = min(self.order, other.order)
        P = len(self.coeffs) + len(other.coeffs) - 1
        out = [[mpf(0)] * (order + 1) for _ in range(P)]
        for p, a in enumerate(self.coeffs):
            for q, b in enumerate(other.coeffs):
                row = out[p + q]
                for i in range(order + 1):
                    ai = a[i]
                    if not ai:
                        continue
                    for j in range(order + 1 - i):
                        if b[j]:
                            row[i + j] += ai * b[j]
        return LogLaurent(tuple(tuple(r) for r in out), self.offset + other.offset, order)

    @property
    def log_degree(self) -> int:
        return len(self.coeffs) - 1

    def mellin_head(self, s, tau) -> object:
        """``int_0^tau t^(s-1) f(t) dt`` term by term.

        Uses ``int_0^tau t^(a-1) log^p t dt
        = tau^a sum_i (-1)^i p!/(p-i)! log(tau)^(p-i) / a^(i+1)``.
        """
        logtau = mp.log(tau)
        tau_s = mp.power(tau, s - self.offset)
        total = 0
        taun = mpf(1)
        for n in range(self.order + 1):
            a = s + n - self.offset
            for p, row in enumerate(self.coeffs):
                c = row[n]
                if not c:
                    continue
                acc = 0
                ap = a
                for i in range(p + 1):
                    acc += (-1) ** i * mpf(math.factorial(p)) / math.factorial(p - i) * logtau ** (p - i) / ap
                    ap *= a
                total += c * acc * taun
            taun *= tau
        return total * tau_s


def li_exp_neg_expansion(k: int, order: int, wp: int) -> LogLaurent:
    """``Li_k(e^{-t})`` around ``t = 0``; ``k = 0`` gives ``1/(e^t - 1)``."""
    return _li_exp_neg_cached(k, order, wp)


@lru_cache(maxsize=None)
def _li_exp_neg_cached(k: int, order: int, wp: int) -> LogLaurent:
    with mp.workprec(wp):
        if k == 0:
            B = bernoulli_numbers(order)
            row = tuple(from_fraction(b) / math.factorial(n) for n, b in enumerate(B))
            return LogLaurent((row,), 1, order)
        P, Q = polylog_log_expansion(k, order + 1, wp)
        # w = -t, log(-w) = log t
        P = tuple(c if j % 2 == 0 else -c for j, c in enumerate(P))
        Q = tuple(c if j % 2 == 0 else -c for j, c in enumerate(Q))
        return LogLaurent((P, Q), 0, order)


def li_exp_neg_majorant(k: int, order: int, wp: int) -> mpf:
    """``A`` with ``|coefficient of t^(n - offset)| <= A (2 pi)^-n`` for every n."""
    f = li_exp_neg_expansion(k, order, wp)
    twopi = 2 * mp.pi
    best = max(
        (abs(c) * twopi**n for row in f.coeffs for n, c in enumerate(row) if c),
        default=mpf(0),
    )
    # analytic bound past the computed range: |zeta(k-j)|/j! <= 4 (2pi)^(k-1) (2pi)^-j
    return max(best, 4 * twopi ** max(k - 1, 0))


@dataclass(frozen=True)
class LogQSeries:
    """``sum_p t^p sum_{n<=order} coeffs[p][n] q^n`` with ``q = e^{-t}``.

    Coefficients with index ``<= order`` are exact for the represented function.
    """

    coeffs: tuple[tuple, ...]
    order: int

    @classmethod
    def constant(cls, c, order: int) -> "LogQSeries":
        return cls(((c,) + (mpf(0),) * order,), order)

    def __add__(self, other: "LogQSeries") -> "LogQSeries":
        order = min(self.order, other.order)
        P = max(len(self.coeffs), len(other.coeffs))
        rows = []
        for p in range(P):
            a = self.coeffs[p] if p < len(self.coeffs) else None
            b = other.coeffs[p] if p < len(other.coeffs) else None
            rows.append(tuple(
                (a[n] if a else 0) + (b[n] if b else 0) for n in range(order + 1)
            ))
        return LogQSeries(tuple(rows), order)

    def scale(self, c) -> "LogQSeries":
        return LogQSeries(tuple(tuple(c * x for x in row) for row in self.coeffs), self.order)

    def __mul__(self, other: "LogQSeries") -> "LogQSeries":
        order = min(self.order, other.order)
        P = len(self.coeffs) + len(other.coeffs) - 1
        out = [[mpf(0)] * (order + 1) for _ in range(P)]
        for p, a in enumerate(self.coeffs):
            for q, b in enumerate(other.coeffs):
                row = out[p + q]
                nz_b = [(j, bj) for j, bj in enumerate(b[: order + 1]) if bj]
                for i in range(order + 1):
                    ai = a[i]
                    if not ai:
                        continue
                    for j, bj in nz_b:
                        if i + j > order:
                            break
                        row[i + j] += ai * bj
        return LogQSeries(tuple(tuple(r) for r in out), order)

    def over_one_minus_q(self) -> "LogQSeries":
        rows = []
        for row in self.coeffs:
            acc = mpf(0)
            out = []
            for c in row:
                acc += c
                out.append(acc)
            rows.append(tuple(out))
        return LogQSeries(tuple(rows), self.order)

    def times_q(self) -> "LogQSeries":
        return LogQSeries(
            tuple((mpf(0),) + row[:-1] for row in self.coeffs), self.order
        )

    def integral_from_zero(self) -> "LogQSeries":
        """``y -> int_0^q f(y) dy`` in the variable ``q`` (``t = -log q``).

        ``int_0^q y^n (-log y)^p dy = q^(n+1) sum_i p!/i! (-log q)^i / (n+1)^(p-i+1)``.
        """
        P = len(self.coeffs)
        out = [[mpf(0)] * (self.order + 1) for _ in range(P)]
        for p, row in enumerate(self.coeffs):
            pf = math.factorial(p)
            for n in range(self.order):
                c = row[n]
                if not c:
                    continue
                m = n + 1
                for i in range(p + 1):
                    out[i][m] += c * (mpf(pf) / math.factorial(i)) / mpf(m) ** (p - i + 1)
        return LogQSeries(tuple(tuple(r) for r in out), self.order)

    def __call__(self, t):
        q = mp.exp(-t)
        total = 0
        tp = 1
        for row in self.coeffs:
            total += tp * mp.polyval(row[::-1], q)
            tp *= t
        return total

    def tail_estimate(self, t) -> mpf:
        """Heuristic size of the omitted terms beyond ``order`` at ``t``."""
        q = mp.exp(-t)
        est = mpf(0)
        tp = mpf(1)
        window = range(max(0, self.order - 8), self.order + 1)
        for row in self.coeffs:
            last = max((abs(row[n]) * q**n for n in window), default=mpf(0))
            est += tp * last
            tp *= abs(t)
        return est * 8 / (1 - q)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1


def li_one_minus_q(k: int, order: int, wp: int) -> LogQSeries:
    """``Li_k(1 - e^{-t})`` for ``k >= 1`` as a :class:`LogQSeries`.

    ``Li_1(1 - q) = t`` and ``Li_k(1 - q) = zeta(k) - int_0^q Li_{k-1}(1-y)/(1-y) dy``.
    """
    return _li_one_minus_q_cached(k, order, wp)


@lru_cache(maxsize=None)
def _li_one_minus_q_cached(k: int, order: int, wp: int) -> LogQSeries:
    with mp.workprec(wp):
        if k < 1:
            raise ValueError("k must be >= 1")
        if k == 1:
            return LogQSeries(((mpf(0),) * (order + 1), (mpf(1),) + (mpf(0),) * order), order)
        prev = _li_one_minus_q_cached(k - 1, order, wp)
        integ = prev.over_one_minus_q().integral_from_zero()
        return LogQSeries.constant(zeta_int(k, wp), order) + integ.scale(-1)
