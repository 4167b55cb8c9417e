"""Exact rational power series in ``t`` (or ``z``).

Everything here works over :class:`fractions.Fraction` and never rounds.  The
main products are the generalized poly-Bernoulli coefficients

.. math::

    \\frac{\\prod_j \\mathrm{Li}_{k_j}(1-e^{-t})}{e^t-1} = \\sum_m C^{k}_{m} \\frac{t^m}{m!}

and the coefficient sequences of the Mordell-Tornheim generating functions
``Lambda_k(z)``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Iterable, Sequence

__all__ = [
    "Rational",
    "IndexVector",
    "TruncatedSeries",
    "series_add",
    "series_mul",
    "series_compose",
    "series_div_by_expm1",
    "one_minus_exp_neg",
    "polylog_series",
    "bernoulli",
    "bernoulli_numbers",
    "akmt_coefficients",
    "akmt_series",
    "akmt_coefficients_by_composition",
    "lambda_coefficients",
    "lambda_u_series",
    "check_lemma_aaaa",
]

Rational = Fraction

_ZERO = Fraction(0)
_ONE = Fraction(1)


@dataclass(frozen=True)
class IndexVector:
    """Multi-index ``(k_1, ..., k_r)`` with an optional trailing exponent.

    ``tail`` is ``None`` for plain indices and the extra exponent
    ``k_{r+1} >= 0`` for Lambda-type indices.
    """

    entries: tuple[int, ...]
    tail: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(int(k) for k in self.entries))
        if not self.entries:
            raise ValueError("an index vector needs at least one entry")
        if self.tail is not None and self.tail < 0:
            raise ValueError("the trailing exponent must be >= 0")

    @classmethod
    def parse(cls, source: str | Iterable[int], tail: int | None = None) -> "IndexVector":
        if isinstance(source, str):
            parts = [p for p in source.replace(" ", "").split(",") if p]
            try:
                entries = tuple(int(p) for p in parts)
            except ValueError:
                raise ValueError(f"cannot parse index {source!r}") from None
        else:
            entries = tuple(source)
        return cls(entries, tail)

    @classmethod
    def lam(cls, full: Sequence[int]) -> "IndexVector":
        """Split ``(k_1, ..., k_r, k_{r+1})`` into entries and tail."""
        full = tuple(full)
        if len(full) < 2:
            raise ValueError("a Lambda index needs r >= 1 entries plus a tail")
        return cls(full[:-1], full[-1])

    @property
    def depth(self) -> int:
        return len(self.entries)

    def require_positive(self):
        if any(k < 1 for k in self.entries):
            raise ValueError(f"entries must be positive integers, got {self.entries}")
        return self

    def lowered(self) -> "IndexVector":
        if not self.tail:
            raise ValueError("tail is already zero")
        return IndexVector(self.entries, self.tail - 1)

    def __str__(self):
        body = ",".join(map(str, self.entries))
        return body if self.tail is None else f"{body};{self.tail}"


@dataclass(frozen=True)
class TruncatedSeries:
    """``sum_{n <= order} coeffs[n] t^n``; coefficients exact through ``order``."""

    coeffs: tuple[Fraction, ...]
    order: int

    def __post_init__(self):
        coeffs = tuple(Fraction(c) for c in self.coeffs)
        if self.order < 0:
            raise ValueError("order must be >= 0")
        if len(coeffs) < self.order + 1:
            coeffs = coeffs + (_ZERO,) * (self.order + 1 - len(coeffs))
        elif len(coeffs) > self.order + 1:
            coeffs = coeffs[: self.order + 1]
        object.__setattr__(self, "coeffs", coeffs)

    @classmethod
    def from_list(cls, coeffs: Iterable, order: int | None = None) -> "TruncatedSeries":
        coeffs = tuple(coeffs)
        return cls(coeffs, len(coeffs) - 1 if order is None else order)

    @classmethod
    def zero(cls, order: int) -> "TruncatedSeries":
        return cls((), order)

    @classmethod
    def one(cls, order: int) -> "TruncatedSeries":
        return cls((_ONE,), order)

    def __getitem__(self, n: int) -> Fraction:
        return self.coeffs[n]

    def __len__(self):
        return self.order + 1

    def __add__(self, other):
        return series_add(self, other)

    def __sub__(self, other):
        return series_add(self, other.scale(-1))

    def __mul__(self, other):
        if isinstance(other, TruncatedSeries):
            return series_mul(self, other)
        return self.scale(other)

    __rmul__ = __mul__

    def __neg__(self):
        return self.scale(-1)

    def scale(self, c) -> "TruncatedSeries":
        c = Fraction(c)
        return TruncatedSeries(tuple(c * a for a in self.coeffs), self.order)

    def truncate(self, order: int) -> "TruncatedSeries":
        return TruncatedSeries(self.coeffs, min(order, self.order))

    def derivative(self) -> "TruncatedSeries":
        if self.order == 0:
            return TruncatedSeries.zero(0)
        return TruncatedSeries(
            tuple(n * self.coeffs[n] for n in range(1, self.order + 1)), self.order - 1
        )

    def integral(self) -> "TruncatedSeries":
        """Antiderivative vanishing at 0; exact one order higher."""
        return TruncatedSeries(
            (_ZERO,) + tuple(c / (n + 1) for n, c in enumerate(self.coeffs)),
            self.order + 1,
        )

    def shift_down(self) -> "TruncatedSeries":
        """Divide by ``t``; requires a zero constant term."""
        if self.coeffs[0] != 0:
            raise ValueError("cannot divide by t: nonzero constant term")
        if self.order == 0:
            raise ValueError("nothing left after dividing by t at order 0")
        return TruncatedSeries(self.coeffs[1:], self.order - 1)

    def valuation(self) -> int | None:
        for n, c in enumerate(self.coeffs):
            if c:
                return n
        return None


def series_add(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    n = min(a.order, b.order)
    return TruncatedSeries(tuple(a.coeffs[i] + b.coeffs[i] for i in range(n + 1)), n)


def _cauchy(a: Sequence[Fraction], b: Sequence[Fraction], n: int) -> list[Fraction]:
    # skip leading zeros, they are common (products of O(t) factors)
    ia = next((i for i, c in enumerate(a[: n + 1]) if c), None)
    ib = next((i for i, c in enumerate(b[: n + 1]) if c), None)
    out = [_ZERO] * (n + 1)
    if ia is None or ib is None:
        return out
    for m in range(ia + ib, n + 1):
        acc = _ZERO
        for i in range(ia, m - ib + 1):
            ai = a[i]
            if ai:
                bj = b[m - i]
                if bj:
                    acc += ai * bj
        out[m] = acc
    return out


def series_mul(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    n = min(a.order, b.order)
    return TruncatedSeries(tuple(_cauchy(a.coeffs, b.coeffs, n)), n)


def series_compose(outer: TruncatedSeries, inner: TruncatedSeries) -> TruncatedSeries:
    """``outer(inner(t))`` by Horner's rule; ``inner`` must vanish at 0."""
    if inner.coeffs[0] != 0:
        raise ValueError("composition needs inner series with zero constant term")
    n = min(outer.order, inner.order)
    inner = inner.truncate(n)
    acc = TruncatedSeries((outer.coeffs[n] if n <= outer.order else _ZERO,), n)
    for c in reversed(outer.coeffs[:n]):
        acc = series_mul(acc, inner)
        acc = TruncatedSeries((acc.coeffs[0] + c,) + acc.coeffs[1:], n)
    return acc


@lru_cache(maxsize=None)
def _expm1_over_t_inverse(order: int) -> TruncatedSeries:
    """``t / (e^t - 1)`` through ``order``."""
    return TruncatedSeries(
        tuple(b / factorial(n) for n, b in enumerate(bernoulli_numbers(order))), order
    )


def series_div_by_expm1(a: TruncatedSeries) -> TruncatedSeries:
    """``a / (e^t - 1)``; result is exact through ``a.order - 1``."""
    if a.coeffs[0] != 0:
        raise ValueError("division by e^t - 1 needs a zero constant term")
    if a.order == 0:
        raise ValueError("order-0 input leaves no exact coefficients")
    # a/(e^t-1) = (a/t) * (t/(e^t-1))
    return series_mul(a.shift_down(), _expm1_over_t_inverse(a.order - 1))


def one_minus_exp_neg(order: int) -> TruncatedSeries:
    """``1 - e^{-t}``: coefficient of ``t^m`` is ``-(-1)^m / m!`` for ``m >= 1``."""
    if order < 0:
        raise ValueError("order must be >= 0")
    coeffs = [_ZERO] + [Fraction(-((-1) ** m), factorial(m)) for m in range(1, order + 1)]
    return TruncatedSeries(tuple(coeffs), order)


def polylog_series(k: int, order: int) -> TruncatedSeries:
    """``Li_k(z) = sum_{m>=1} z^m / m^k`` for ``k >= 0``."""
    if k < 0:
        raise ValueError("negative polylogarithm orders are not supported")
    if order < 0:
        raise ValueError("order must be >= 0")
    return TruncatedSeries(
        (_ZERO,) + tuple(Fraction(1, m**k) for m in range(1, order + 1)), order
    )


_BERNOULLI: list[Fraction] = [_ONE]


def bernoulli_numbers(n: int) -> list[Fraction]:
    """``B_0 .. B_n`` with ``B_1 = -1/2``, via ``sum_j C(m+1, j) B_j = 0``."""
    if n < 0:
        raise ValueError("n must be >= 0")
    B = _BERNOULLI
    while len(B) <= n:
        m = len(B)
        if m > 1 and m % 2:
            B.append(_ZERO)
            continue
        acc = sum((comb(m + 1, j) * B[j] for j in range(m) if B[j]), _ZERO)
        B.append(-acc / (m + 1))
    return B[: n + 1]


def bernoulli(n: int) -> Fraction:
    return bernoulli_numbers(n)[n]


# The composite Li_k(1 - e^{-t}) is built from the ODE
#   d/dt Li_k(1 - e^{-t}) = Li_{k-1}(1 - e^{-t}) / (e^t - 1),   Li_1(1 - e^{-t}) = t,
# which is O(N^2) per step instead of O(N^3) for Horner composition.

@lru_cache(maxsize=None)
def _li_u_series(k: int, order: int) -> TruncatedSeries:
    if k < 0:
        raise ValueError("k must be >= 0")
    if k == 0:
        # Li_0(u) = u / (1 - u) = e^t - 1
        return TruncatedSeries(
            (_ZERO,) + tuple(Fraction(1, factorial(m)) for m in range(1, order + 1)), order
        )
    if k == 1:
        return TruncatedSeries((_ZERO, _ONE), order) if order >= 1 else TruncatedSeries.zero(0)
    prev = _li_u_series(k - 1, order)
    return series_div_by_expm1(prev).integral().truncate(order)


def _prod(factors: Sequence[TruncatedSeries], order: int) -> TruncatedSeries:
    acc = TruncatedSeries.one(order)
    for f in factors:
        acc = series_mul(acc, f)
    return acc


@lru_cache(maxsize=None)
def lambda_u_series(index: IndexVector, order: int) -> TruncatedSeries:
    """Taylor series of ``Lambda_k(1 - e^{-t})`` in ``t`` through ``order``.

    A tail of zero gives the product of polylogarithms; each unit of tail is
    one application of ``f -> int_0^t f(x) / (e^x - 1) dx``.
    """
    index.require_positive()
    tail = index.tail or 0
    if tail == 0:
        return _prod([_li_u_series(k, order) for k in sorted(index.entries)], order)
    lower = lambda_u_series(index.lowered(), order)
    return series_div_by_expm1(lower).integral().truncate(order)


@lru_cache(maxsize=None)
def _akmt_ordinary(index: tuple[int, ...], order: int) -> TruncatedSeries:
    numer = lambda_u_series(IndexVector(index, 0), order + 1)
    return series_div_by_expm1(numer)


def akmt_series(index, order: int) -> TruncatedSeries:
    """``prod_j Li_{k_j}(1 - e^{-t}) / (e^t - 1)`` as an ordinary series."""
    index = _as_index(index).require_positive()
    return _akmt_ordinary(tuple(sorted(index.entries)), order)


def akmt_coefficients(index, count: int) -> list[Fraction]:
    """``C^k_{0,MT}, ..., C^k_{count,MT}`` exactly."""
    if count < 0:
        raise ValueError("count must be >= 0")
    s = akmt_series(index, count)
    return [s.coeffs[m] * factorial(m) for m in range(count + 1)]


def akmt_coefficients_by_composition(index, count: int) -> list[Fraction]:
    """Same as :func:`akmt_coefficients`, via Horner composition ``Li_k(u(t))``.

    Kept as an independent route; it is cubic in ``count``.
    """
    index = _as_index(index).require_positive()
    n = count + 1
    u = one_minus_exp_neg(n)
    numer = _prod([series_compose(polylog_series(k, n), u) for k in index.entries], n)
    s = series_div_by_expm1(numer)
    return [s.coeffs[m] * factorial(m) for m in range(count + 1)]


def lambda_coefficients(index: IndexVector, count: int) -> list[Fraction]:
    """``b_0 .. b_count`` of ``Lambda_k(z) = sum_M b_M z^M``.

    ``b_M = M^{-tail} * sum_{m_1+...+m_r = M} prod_j m_j^{-k_j}``; zero for ``M < r``.
    """
    if index.tail is None:
        raise ValueError("lambda_coefficients needs an index with a tail exponent")
    index.require_positive()
    if count < 0:
        raise ValueError("count must be >= 0")
    acc = [_ONE] + [_ZERO] * count
    for k in index.entries:
        acc = _cauchy(acc, polylog_series(k, count).coeffs, count)
    tail = index.tail
    if tail:
        acc = [c / Fraction(M) ** tail if M else c for M, c in enumerate(acc)]
    return acc


def check_lemma_aaaa(index: IndexVector, order: int) -> bool:
    """Coefficient form of the derivative rule for ``Lambda_k``.

    ``M b_M(k) = b_M(k with tail - 1)`` when the tail is at least 2, and
    ``M b_M(k) = [z^M] prod_j Li_{k_j}(z)`` when the tail is 1.
    """
    if not index.tail:
        raise ValueError("the derivative rule needs a tail exponent >= 1")
    lhs = lambda_coefficients(index, order)
    if index.tail >= 2:
        rhs = lambda_coefficients(index.lowered(), order)
    else:
        rhs = list(_prod([polylog_series(k, order) for k in index.entries], order).coeffs)
    r = index.depth
    return all(M * lhs[M] == rhs[M] for M in range(r, order + 1)) and all(
        lhs[M] == 0 for M in range(min(r, order + 1))
    )


def _as_index(index) -> IndexVector:
    if isinstance(index, IndexVector):
        return index
    if isinstance(index, int):
        return IndexVector((index,))
    return IndexVector.parse(index)
