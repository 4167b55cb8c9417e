"""Mordell-Tornheim zeta values, xi-functions of Mordell-Tornheim type and
generalized poly-Bernoulli coefficients, with numerical checks of the
functional relations between them.

Layers:

* :mod:`mtzeta.series` -- exact rational power series and coefficients.
* :mod:`mtzeta.numerics` -- zeta, Hurwitz zeta, gamma and polylog with error bounds.
* :mod:`mtzeta.mteval` -- evaluators for zeta_MT, xi_MT, xi_MT,g, Lambda and double zeta.
* :mod:`mtzeta.identities` -- parameterized identity checks.
* :mod:`mtzeta.cli` -- the ``mtzeta`` command.
"""
__version__ = "0.1.0"

from .numerics import (  # noqa: E402
    DomainError,
    PrecisionError,
    ValueWithError,
    gamma,
    hurwitz_zeta,
    pochhammer,
    polylog_point,
    riemann_zeta,
)
from .series import (  # noqa: E402
    IndexVector,
    TruncatedSeries,
    akmt_coefficients,
    akmt_series,
    bernoulli,
    check_lemma_aaaa,
    lambda_coefficients,
)
from .mteval import (  # noqa: E402
    bbb_rhs,
    euler_double_zeta,
    lambda_eval,
    mt_zeta_fast,
    mt_zeta_oracle,
    xi_mt_continuation_probe,
    xi_mt_eval,
    xi_mt_g_eval,
    xi_mt_negative_integer,
)
from .identities import CheckReport, run_suite  # noqa: E402

__all__ = [
    "DomainError", "PrecisionError", "ValueWithError",
    "gamma", "hurwitz_zeta", "pochhammer", "polylog_point", "riemann_zeta",
    "IndexVector", "TruncatedSeries", "akmt_coefficients", "akmt_series", "bernoulli",
    "check_lemma_aaaa", "lambda_coefficients",
    "bbb_rhs", "euler_double_zeta", "lambda_eval", "mt_zeta_fast", "mt_zeta_oracle",
    "xi_mt_continuation_probe", "xi_mt_eval", "xi_mt_g_eval", "xi_mt_negative_integer",
    "CheckReport", "run_suite",
]
