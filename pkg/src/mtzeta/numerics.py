"""Arbitrary-precision scalar kernels with explicit error bounds.

Scalars are :mod:`mpmath` numbers.  Every public kernel takes a target
precision ``prec`` in bits and works internally at ``prec + GUARD_BITS``;
the private ``_name(..., wp)`` variants take the working precision directly
and are what the evaluators call.
"""
from __future__ import annotations

import math
from contextlib import contextmanager
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from numbers import Number

from mpmath import mp, mpc, mpf

from .series import bernoulli

__all__ = [
    "GUARD_BITS",
    "DomainError",
    "PrecisionError",
    "ValueWithError",
    "working_precision",
    "to_mp",
    "from_fraction",
    "parse_complex",
    "riemann_zeta",
    "hurwitz_zeta",
    "zeta_int",
    "polylog_point",
    "gamma",
    "pochhammer",
]

GUARD_BITS = 32


class DomainError(ValueError):
    """Argument outside the region where a kernel is defined or convergent."""


class PrecisionError(ArithmeticError):
    """The requested accuracy cannot be reached with the given cutoffs."""


@contextmanager
def working_precision(wp: int):
    with mp.workprec(wp):
        yield wp


def from_fraction(q) -> mpf:
    q = Fraction(q)
    return mpf(q.numerator) / q.denominator


def to_mp(x):
    """Convert ints, Fractions, strings, floats and complex to mpmath scalars."""
    if isinstance(x, (mpf, mpc)):
        return +x
    if isinstance(x, Fraction):
        return from_fraction(x)
    if isinstance(x, bool):
        raise TypeError("booleans are not numbers here")
    if isinstance(x, str):
        return parse_complex(x)
    if isinstance(x, complex):
        return mpc(x.real, x.imag)
    if isinstance(x, Number):
        return mpf(x)
    return mp.mpmathify(x)


def parse_complex(text: str):
    """Parse ``"3"``, ``"7/2"``, ``"0.5"``, ``"3+0.5i"``, ``"2-1/3i"``, ``"i"``."""
    raw = text.strip().replace(" ", "").replace("j", "i")
    if not raw:
        raise ValueError("empty number")
    if not raw.endswith("i"):
        return _parse_real(raw)
    body = raw[:-1]
    split = max(body.rfind("+"), body.rfind("-"))
    while split > 0 and body[split - 1] in "eE":
        split = max(body.rfind("+", 0, split - 1), body.rfind("-", 0, split - 1))
    if split <= 0:
        re_part, im_part = "0", body
    else:
        re_part, im_part = body[:split], body[split:]
    if im_part in ("", "+"):
        im_part = "1"
    elif im_part == "-":
        im_part = "-1"
    return mpc(_parse_real(re_part), _parse_real(im_part))


def _parse_real(text: str) -> mpf:
    try:
        if "/" in text:
            return from_fraction(Fraction(text))
        return mpf(text)
    except (ValueError, ZeroDivisionError):
        raise ValueError(f"cannot parse number {text!r}") from None


def _abs(x) -> mpf:
    return abs(x)


@dataclass(frozen=True)
class ValueWithError:
    """An estimate with an absolute error bound.

    ``rigorous`` is true only when ``abs_error`` is a proven bound; sums and
    products of values are rigorous only if all operands are.
    """

    estimate: object
    abs_error: mpf
    rigorous: bool = True

    def __post_init__(self):
        if self.abs_error < 0:
            raise ValueError("abs_error must be nonnegative")

    @classmethod
    def exact(cls, value) -> "ValueWithError":
        return cls(to_mp(value), mpf(0), True)

    @property
    def real(self) -> mpf:
        return mp.re(self.estimate)

    def _coerce(self, other) -> "ValueWithError":
        if isinstance(other, ValueWithError):
            return other
        return ValueWithError.exact(other)

    def __add__(self, other):
        other = self._coerce(other)
        return ValueWithError(
            self.estimate + other.estimate,
            self.abs_error + other.abs_error + _rounding(self.estimate + other.estimate),
            self.rigorous and other.rigorous,
        )

    __radd__ = __add__

    def __neg__(self):
        return ValueWithError(-self.estimate, self.abs_error, self.rigorous)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        prod = self.estimate * other.estimate
        err = (
            _abs(self.estimate) * other.abs_error
            + _abs(other.estimate) * self.abs_error
            + self.abs_error * other.abs_error
            + _rounding(prod)
        )
        return ValueWithError(prod, err, self.rigorous and other.rigorous)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        denom = _abs(other.estimate) - other.abs_error
        if denom <= 0:
            raise ZeroDivisionError("divisor interval contains zero")
        quot = self.estimate / other.estimate
        err = (self.abs_error + _abs(quot) * other.abs_error) / denom + _rounding(quot)
        return ValueWithError(quot, err, self.rigorous and other.rigorous)

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def widen(self, extra, rigorous: bool | None = None) -> "ValueWithError":
        return ValueWithError(
            self.estimate,
            self.abs_error + mpf(extra),
            self.rigorous if rigorous is None else (self.rigorous and rigorous),
        )

    def contains(self, value) -> bool:
        return _abs(self.estimate - to_mp(value)) <= self.abs_error


def _rounding(x) -> mpf:
    # one final rounding at the current working precision
    return _abs(x) * mpf(2) ** (1 - mp.prec)


def _is_int(x) -> bool:
    return mp.im(x) == 0 and mp.isint(mp.re(x))


# --------------------------------------------------------------------------
# Euler-Maclaurin for Hurwitz zeta


def _em_remainder_bound(s, N_plus_a, J: int) -> mpf:
    """Bound for the remainder after ``J`` Bernoulli terms.

    |R| <= 4 |(s)_{2J}| / (2 pi)^{2J} * (N+a)^{1 - sigma - 2J} / (sigma + 2J - 1).
    """
    sigma = mp.re(s)
    poch = mpf(1)
    for i in range(2 * J):
        poch *= abs(s + i)
    return (
        4 * poch / (2 * mp.pi) ** (2 * J)
        * mpf(N_plus_a) ** (1 - sigma - 2 * J)
        / (sigma + 2 * J - 1)
    )


def _em_parameters(s, a, wp: int) -> tuple[int, int]:
    """Pick the direct-sum length N and Bernoulli depth J for 2^-wp accuracy.

    N grows like wp*ln2/(2 pi) plus |s|; J is then the first depth meeting the
    target.
    """
    # relative to the size of the first term once a >= 1
    target = mpf(2) ** (-wp) * min(mpf(1), abs(a) ** (-mp.re(s)))
    base = int(wp * math.log(2) / (2 * math.pi)) + int(abs(s)) + 2
    with mp.workprec(64):
        for N in (base, 2 * base, 4 * base, 8 * base, 16 * base):
            best = None
            for J in range(1, 4 * N + 4 * wp):
                b = _em_remainder_bound(s, N + a, J)
                if b < target:
                    return N, J
                if best is not None and b > best:
                    break
                best = b
    raise PrecisionError(f"Euler-Maclaurin parameters not found for s={s}, a={a}")


def _hurwitz(s, a, wp: int, derivative: int = 0) -> ValueWithError:
    """sum_{n>=0} (n+a)^{-s} (or its s-derivative) at working precision wp."""
    with mp.workprec(wp):
        s = to_mp(s)
        a = to_mp(a)
        if mp.re(s) <= 1:
            raise DomainError(f"Hurwitz zeta needs Re(s) > 1, got s={s}")
        if mp.im(a) != 0 or a <= 0:
            raise DomainError(f"Hurwitz zeta needs real a > 0, got a={a}")
        N, J = _em_parameters(s, a, wp)
        x = N + a
        logx = mp.log(x)
        if derivative == 0:
            total = mp.fsum((n + a) ** (-s) for n in range(N))
            total += x ** (1 - s) / (s - 1) + x ** (-s) / 2
            poch = s  # (s)_{2j-1}
            xp = x ** (-s - 1)
            corr = []
            for j in range(1, J + 1):
                corr.append(from_fraction(bernoulli(2 * j)) / math.factorial(2 * j) * poch * xp)
                poch *= (s + 2 * j - 1) * (s + 2 * j)
                xp /= x * x
            total += mp.fsum(corr)
            err = _em_remainder_bound(s, x, J)
            rigorous = True
        elif derivative == 1:
            total = -mp.fsum(mp.log(n + a) * (n + a) ** (-s) for n in range(N))
            total -= x ** (1 - s) * (logx / (s - 1) + 1 / (s - 1) ** 2)
            total -= logx * x ** (-s) / 2
            poch = s
            dpoch = mpf(1)
            xp = x ** (-s - 1)
            corr = []
            for j in range(1, J + 1):
                c = from_fraction(bernoulli(2 * j)) / math.factorial(2 * j)
                corr.append(c * xp * (dpoch - poch * logx))
                f1, f2 = s + 2 * j - 1, s + 2 * j
                dpoch = dpoch * f1 * f2 + poch * (f1 + f2)
                poch *= f1 * f2
                xp /= x * x
            total += mp.fsum(corr)
            # differentiating the remainder costs at most a log factor
            err = _em_remainder_bound(s, x, J) * (logx + 2 * J + 1)
            rigorous = False
        else:
            raise ValueError("only derivative 0 or 1 is supported")
        return ValueWithError(total, err + _rounding(total) * (N + J), rigorous)


def hurwitz_zeta(s, a, prec: int = 256, derivative: int = 0) -> ValueWithError:
    """Hurwitz zeta ``sum_{n>=0} (n + a)^{-s}`` for ``Re(s) > 1``, ``a > 0``."""
    return _hurwitz(s, a, prec + GUARD_BITS, derivative)


def riemann_zeta(s, prec: int = 256) -> ValueWithError:
    """Riemann zeta for ``Re(s) > 1`` via Euler-Maclaurin."""
    wp = prec + GUARD_BITS
    with mp.workprec(wp):
        s = to_mp(s)
        if _is_int(s):
            return _zeta_int_cached(int(mp.re(s)), wp)
        return _hurwitz(s, 1, wp)


@lru_cache(maxsize=None)
def _zeta_int_cached(k: int, wp: int) -> ValueWithError:
    if k <= 1:
        raise DomainError(f"riemann_zeta needs Re(s) > 1, got {k}")
    return _hurwitz(mpf(k), 1, wp)


def zeta_rational(n: int) -> Fraction:
    """zeta(n) for integers n <= 0: zeta(-m) = (-1)^m B_{m+1} / (m+1)."""
    if n > 0:
        raise DomainError("exact zeta values only for nonpositive integers")
    m = -n
    return (-1) ** m * bernoulli(m + 1) / (m + 1)


def zeta_int(k: int, wp: int) -> mpf:
    """zeta(k) at an integer k != 1: exact rational for k <= 0, EM for k >= 2."""
    if k == 1:
        raise DomainError("zeta has a pole at 1")
    with mp.workprec(wp):
        if k <= 0:
            return from_fraction(zeta_rational(k))
        return +_zeta_int_cached(k, wp).estimate


# --------------------------------------------------------------------------
# Polylogarithm on [0, 1)


def polylog_log_expansion(k: int, n_terms: int, wp: int):
    """Coefficients of ``Li_k(e^w)`` around ``w = 0`` for ``k >= 1``.

    Returns ``(P, Q)`` with ``Li_k(e^w) = sum_j P[j] w^j + log(-w) sum_j Q[j] w^j``
    (``Q`` has a single nonzero entry at ``k - 1``).  Converges for ``|w| < 2 pi``.
    """
    return _log_expansion_cached(k, n_terms, wp)


@lru_cache(maxsize=None)
def _log_expansion_cached(k: int, n_terms: int, wp: int):
    if k < 1:
        raise ValueError("log expansion needs k >= 1")
    with mp.workprec(wp):
        P = []
        fact = 1
        for j in range(n_terms):
            if j:
                fact *= j
            if j == k - 1:
                harmonic = sum(Fraction(1, i) for i in range(1, k))
                P.append(from_fraction(harmonic) / fact)
            else:
                P.append(zeta_int(k - j, wp) / fact)
        Q = [mpf(0)] * n_terms
        if k - 1 < n_terms:
            Q[k - 1] = -mpf(1) / math.factorial(k - 1)
        return tuple(P), tuple(Q)


def log_expansion_tail_bound(k: int, n_terms: int, w_abs) -> mpf:
    """Bound on the omitted ``j >= n_terms`` part of the log expansion.

    Uses |zeta(k-j)| / j! <= 4 (2 pi)^{k-1} (2 pi)^{-j} for j >= k + 1.
    """
    rho = mpf(w_abs) / (2 * mp.pi)
    if rho >= 1:
        return mp.inf
    if n_terms <= k:
        raise ValueError("tail bound needs n_terms > k")
    return 4 * (2 * mp.pi) ** (k - 1) * rho ** n_terms / (1 - rho)


def _polylog(k: int, x, wp: int) -> ValueWithError:
    with mp.workprec(wp):
        x = to_mp(x)
        if mp.im(x) != 0 or not (0 <= x < 1):
            raise DomainError(f"polylog_point needs 0 <= x < 1, got {x}")
        if k < 1:
            raise DomainError("polylog_point needs k >= 1")
        if x == 0:
            return ValueWithError(mpf(0), mpf(0), True)
        target = mpf(2) ** (-wp)
        if x <= 0.5:
            # direct series with tail x^{M+1} / ((1-x)(M+1)^k)
            terms = []
            xm = mpf(1)
            M = 0
            while True:
                M += 1
                xm *= x
                terms.append(xm / mpf(M) ** k)
                tail = xm * x / ((1 - x) * mpf(M + 1) ** k)
                if tail < target:
                    break
            total = mp.fsum(terms)
            return ValueWithError(total, tail + _rounding(total) * M, True)
        w = mp.log(x)
        rho = abs(w) / (2 * mp.pi)
        n_terms = max(k + 1, int(wp * math.log(2) / -math.log(float(rho))) + k + 2)
        P, Q = polylog_log_expansion(k, n_terms, wp)
        total = mp.polyval(P[::-1], w) + mp.log(-w) * mp.polyval(Q[::-1], w)
        err = log_expansion_tail_bound(k, n_terms, abs(w))
        return ValueWithError(total, err + _rounding(total) * n_terms, True)


def polylog_point(k: int, x, prec: int = 256) -> ValueWithError:
    """``Li_k(x)`` for integer ``k >= 1`` and real ``0 <= x < 1``.

    Direct series below 1/2, the expansion in ``log x`` above it.
    """
    return _polylog(k, x, prec + GUARD_BITS)


# --------------------------------------------------------------------------
# Gamma and Pochhammer


def _stirling_terms(wp: int) -> tuple[float, int]:
    """Shift threshold R and Bernoulli depth J for log-gamma at precision wp."""
    R = wp * math.log(2) / (2 * math.pi) + 4
    J = int(math.pi * R) + 2
    return R, J


def _gamma(s, wp: int) -> ValueWithError:
    with mp.workprec(wp):
        s = to_mp(s)
        if _is_int(s):
            n = int(mp.re(s))
            if n <= 0:
                raise DomainError(f"Gamma has a pole at {n}")
            return ValueWithError(mpf(math.factorial(n - 1)), mpf(0), True)
        R, J = _stirling_terms(wp)
        shift = max(0, int(math.ceil(R - float(mp.re(s)))))
        z = s + shift
        # |arg z| <= pi/2 is guaranteed after the shift
        logg = (z - mpf(1) / 2) * mp.log(z) - z + mp.log(2 * mp.pi) / 2
        zinv = 1 / z
        zinv2 = zinv * zinv
        zp = zinv
        for j in range(1, J + 1):
            logg += from_fraction(bernoulli(2 * j)) / (2 * j * (2 * j - 1)) * zp
            zp *= zinv2
        theta = abs(mp.arg(z))
        rem = (
            abs(from_fraction(bernoulli(2 * J + 2)))
            / ((2 * J + 2) * (2 * J + 1) * abs(z) ** (2 * J + 1))
            / mp.cos(theta / 2) ** (2 * J + 2)
        )
        val = mp.exp(logg)
        if shift:
            val /= mp.rf(s, shift)
        # exp(logg + e) = exp(logg)(1 + O(e)) with |e| small
        # rounding in logg is absolute, hence relative in exp(logg)
        err = abs(val) * 2 * rem + _rounding(val) * (abs(logg) + 1) * (shift + J + 4)
        return ValueWithError(val, err, True)


def gamma(s, prec: int = 256) -> ValueWithError:
    """Gamma function by upward shifting and Stirling's series."""
    return _gamma(s, prec + GUARD_BITS)


def _pochhammer(s, j: int, wp: int) -> ValueWithError:
    if j < 0:
        raise ValueError("Pochhammer index must be >= 0")
    with mp.workprec(wp):
        s = to_mp(s)
        val = mpf(1)
        for i in range(j):
            val *= s + i
        return ValueWithError(val, _rounding(val) * (j + 1), True)


def pochhammer(s, j: int, prec: int = 256) -> ValueWithError:
    """Rising factorial ``s (s+1) ... (s+j-1)`` by direct product."""
    return _pochhammer(s, j, prec + GUARD_BITS)
