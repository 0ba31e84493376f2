"""q-Pochhammer symbols, the Rogers-Ramanujan functions, theta and chi
functions, finite-form mu/nu polynomials, and exact series expansions.

Numeric routines take a PrecisionContext and truncate with tail bounds tied
to the context tolerance.  The finite q-Pochhammer product and the mu/nu sums
operate on whatever number type they are given and are exact on rationals.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .formal import FormalSeries, product_one_minus_inv
from .numerics import PrecisionContext, RootMode, root
from . import cf as _cf

__all__ = [
    "QPoint",
    "pochhammer",
    "pochhammer_inf",
    "G",
    "H",
    "R_product",
    "S",
    "chi",
    "theta_phi",
    "theta_phi_series",
    "finite_mu",
    "finite_nu",
    "series_G",
    "series_H",
    "series_R",
]


@dataclass(frozen=True)
class QPoint:
    """A nome with |q| < 1, optionally reconstructible as exp(-pi*sqrt(s)).

    When ``sqrt_arg`` is set, the numeric value regenerates at any context
    precision; otherwise ``literal`` holds the value itself (a Fraction stays
    exact until converted).
    """

    sqrt_arg: Optional[Fraction] = None
    literal: object = None

    def __post_init__(self):
        if (self.sqrt_arg is None) == (self.literal is None):
            raise ValueError("exactly one of sqrt_arg / literal must be given")
        if self.sqrt_arg is not None and self.sqrt_arg <= 0:
            raise ValueError("sqrt_arg must be positive")
        if self.literal is not None and abs(self.literal) >= 1:
            raise ValueError("QPoint literal requires |q| < 1")

    def value(self, ctx: PrecisionContext):
        if self.sqrt_arg is not None:
            s = ctx.real(self.sqrt_arg)
            return ctx.mp.exp(-ctx.mp.pi * ctx.mp.sqrt(s))
        return ctx.number(self.literal)


def _as_q(q, ctx: PrecisionContext):
    if isinstance(q, QPoint):
        return q.value(ctx)
    return ctx.number(q)


def pochhammer(a, q, n: int):
    """Finite q-Pochhammer (a; q)_n = prod_{k<n} (1 - a*q^k); exact on rationals."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    out = 1
    qk = 1
    for _ in range(n):
        out *= 1 - a * qk
        qk *= q
    return out


def pochhammer_inf(a, q, ctx: PrecisionContext):
    """Infinite q-Pochhammer (a; q)_inf for |q| < 1.

    Truncates once the remaining factors are within tolerance of 1:
    |a|*|q|^N / (1 - |q|) below the internal threshold bounds the relative
    truncation error.
    """
    mp = ctx.mp
    a = _as_q(a, ctx) if isinstance(a, QPoint) else ctx.number(a)
    q = _as_q(q, ctx)
    aq = abs(q)
    if aq >= 1:
        raise ValueError("pochhammer_inf requires |q| < 1")
    if a == 0:
        return mp.mpf(1)
    out = mp.mpf(1)
    aqk = a
    bound_scale = 1 / (1 - aq)
    threshold = ctx.stop_tol
    for _ in range(ctx.max_iter):
        out *= 1 - aqk
        aqk *= q
        if abs(aqk) * bound_scale < threshold:
            return out
    raise RuntimeError("pochhammer_inf did not reach its tail bound within max_iter")


def _rr_sum(q, ctx: PrecisionContext, triangular: bool):
    """sum q^(n^2) / (q;q)_n (triangular=False) or q^(n(n+1)) / (q;q)_n."""
    mp = ctx.mp
    q = _as_q(q, ctx)
    if abs(q) >= 1:
        raise ValueError("Rogers-Ramanujan series require |q| < 1")
    total = mp.mpf(1)  # n = 0 term
    if q == 0:
        return total
    num = mp.mpf(1)  # q^(n^2) or q^(n(n+1))
    den = mp.mpf(1)  # (q;q)_n
    qn = mp.mpf(1)  # q^n
    threshold = ctx.stop_tol
    prev = prev2 = None
    for n in range(1, ctx.max_iter):
        qn *= q
        num *= qn * qn if triangular else qn * qn / q  # q^(2n) or q^(2n-1)
        den *= 1 - qn
        term = num / den
        total += term
        t = abs(term)
        if prev is not None and prev2 is not None and t < threshold and t < prev < prev2:
            return total
        prev2, prev = prev, t
    raise RuntimeError("series did not converge within max_iter")


def G(q, ctx: PrecisionContext, backend: str = "series"):
    """Rogers-Ramanujan function G(q), by series or infinite-product backend."""
    if backend == "series":
        return _rr_sum(q, ctx, triangular=False)
    if backend == "product":
        qv = _as_q(q, ctx)
        q5 = qv**5
        return 1 / (pochhammer_inf(qv, q5, ctx) * pochhammer_inf(qv**4, q5, ctx))
    raise ValueError(f"unknown backend {backend!r}")


def H(q, ctx: PrecisionContext, backend: str = "series"):
    """Rogers-Ramanujan function H(q), by series or infinite-product backend."""
    if backend == "series":
        return _rr_sum(q, ctx, triangular=True)
    if backend == "product":
        qv = _as_q(q, ctx)
        q5 = qv**5
        return 1 / (pochhammer_inf(qv**2, q5, ctx) * pochhammer_inf(qv**3, q5, ctx))
    raise ValueError(f"unknown backend {backend!r}")


def R_product(q, mode: RootMode = RootMode.PRINCIPAL, ctx: Optional[PrecisionContext] = None):
    """R(q) = q^(1/5) * H(q)/G(q), the product-side representation."""
    if ctx is None:
        ctx = PrecisionContext()
    qv = _as_q(q, ctx)
    if qv == 0 or abs(qv) >= 1:
        raise ValueError("R_product requires 0 < |q| < 1")
    return root(qv, 5, mode, ctx) * H(qv, ctx, "product") / G(qv, ctx, "product")


def S(q, ctx: Optional[PrecisionContext] = None, method: str = "cf"):
    """Alternating counterpart S(q) = -R(-q) for real q in (0, 1].

    The default route evaluates the alternating continued fraction (R at -q
    with the real fifth root); the product route is available for |q| < 1.
    """
    if ctx is None:
        ctx = PrecisionContext()
    qv = _as_q(q, ctx)
    if not (0 < qv <= 1):
        raise ValueError("S(q) requires real q in (0, 1]")
    if method == "cf":
        res = _cf.rr_cf(-qv, RootMode.REAL_ODD, ctx)
        if not res.converged:
            raise RuntimeError(f"S({qv}) continued fraction did not converge: {res.status}")
        return -res.value
    if method == "product":
        return -R_product(-qv, RootMode.REAL_ODD, ctx)
    raise ValueError(f"unknown method {method!r}")


def chi(q, ctx: PrecisionContext):
    """chi(q) = (-q; q^2)_inf."""
    qv = _as_q(q, ctx)
    return pochhammer_inf(-qv, qv**2, ctx)


def theta_phi(q, ctx: PrecisionContext):
    """Theta function 1 + 2*sum_{n>=1} q^(n^2), truncated at the tolerance."""
    mp = ctx.mp
    qv = _as_q(q, ctx)
    if abs(qv) >= 1:
        raise ValueError("theta_phi requires |q| < 1")
    total = mp.mpf(1)
    if qv == 0:
        return total
    threshold = ctx.stop_tol
    power = mp.mpf(1)  # q^(n^2)
    qn = mp.mpf(1)  # q^n
    for n in range(1, ctx.max_iter):
        qn *= qv
        power *= qn * qn / qv  # multiply by q^(2n-1)
        total += 2 * power
        if abs(power) < threshold:
            return total
    raise RuntimeError("theta series did not converge within max_iter")


def theta_phi_series(order: int) -> FormalSeries:
    """Exact series prefix 1 + 2q + 2q^4 + 2q^9 + ... through the order."""
    coeffs = [0] * (order + 1)
    coeffs[0] = 1
    n = 1
    while n * n <= order:
        coeffs[n * n] = 2
        n += 1
    return FormalSeries(coeffs, 0, order)


def _qq(q, n: int):
    """(q; q)_n."""
    return pochhammer(q, q, n)


def finite_mu(n: int, a, q):
    """Finite-form numerator: sum over k <= floor((n+1)/2); exact on rationals."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    total = 0
    for k in range(0, (n + 1) // 2 + 1):
        total += (
            a**k * q ** (k * k) * _qq(q, n - k + 1) / (_qq(q, k) * _qq(q, n - 2 * k + 1))
        )
    return total


def finite_nu(n: int, a, q):
    """Finite-form denominator: sum over k <= floor(n/2); exact on rationals."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    total = 0
    for k in range(0, n // 2 + 1):
        total += (
            a**k * q ** (k * (k + 1)) * _qq(q, n - k) / (_qq(q, k) * _qq(q, n - 2 * k))
        )
    return total


# -- exact series expansions ---------------------------------------------------


def _rr_sum_series(order: int, triangular: bool) -> FormalSeries:
    # sum_n q^(n^2 [+n]) * prod_{j<=n} 1/(1-q^j), exact integer coefficients
    acc = [0] * (order + 1)
    acc[0] = 1
    inv = [0] * (order + 1)
    inv[0] = 1
    n = 1
    while (n * n + (n if triangular else 0)) <= order:
        # inv *= 1/(1 - q^n)
        for j in range(n, order + 1):
            if inv[j - n] != 0:
                inv[j] += inv[j - n]
        shift = n * n + (n if triangular else 0)
        for j in range(shift, order + 1):
            if inv[j - shift] != 0:
                acc[j] += inv[j - shift]
        n += 1
    return FormalSeries(acc, 0, order)


def series_G(order: int, side: str = "sum") -> FormalSeries:
    """Exact expansion of G; 'sum' and 'product' sides must agree."""
    if order < 1:
        raise ValueError("order must be >= 1")
    if side == "sum":
        return _rr_sum_series(order, triangular=False)
    if side == "product":
        ks = [k for k in range(1, order + 1) if k % 5 in (1, 4)]
        return product_one_minus_inv(ks, order)
    raise ValueError(f"unknown side {side!r}")


def series_H(order: int, side: str = "sum") -> FormalSeries:
    """Exact expansion of H; 'sum' and 'product' sides must agree."""
    if order < 1:
        raise ValueError("order must be >= 1")
    if side == "sum":
        return _rr_sum_series(order, triangular=True)
    if side == "product":
        ks = [k for k in range(1, order + 1) if k % 5 in (2, 3)]
        return product_one_minus_inv(ks, order)
    raise ValueError(f"unknown side {side!r}")


def series_R(order: int) -> FormalSeries:
    """Exact expansion of R in t (t^5 = q): t * H(t^5)/G(t^5), lowest term t."""
    if order < 1:
        raise ValueError("order must be >= 1")
    m = order // 5 + 1
    g = series_G(m)
    h = series_H(m)
    ratio = h * g.reciprocal()  # q-series, unit constant term
    return ratio.stretch(5).shift(1).truncate(order)
