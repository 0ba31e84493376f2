"""Generalized continued fraction evaluation and root-of-unity classification.

A continued fraction b0 + a1/(b1 + a2/(b2 + ...)) is described by a CFSpec:
the leading term b0, a generator k -> (a_k, b_k) for k >= 1, and an optional
multiplicative prefactor base**exponent (exponent denominator 1 or 5).

Finite evaluation uses the backward recurrence and is exact on rational
input.  Infinite evaluation uses the forward convergent recurrence
A_k = b_k*A_{k-1} + a_k*A_{k-2} (B_k likewise) with joint rescaling, a
two-difference stopping rule, and limit-cycle detection for divergent
fractions whose convergents approach a periodic cycle.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional

from .numerics import PrecisionContext, RootMode, golden_phi, root

__all__ = [
    "CFSpec",
    "Prefactor",
    "CFStatus",
    "CFResult",
    "ZeroDenominatorError",
    "DivergenceError",
    "eval_finite",
    "eval_infinite",
    "convergents",
    "rr_cf",
    "rr_cfspec",
    "legendre5",
    "schur_classify",
    "SchurClassification",
    "rr_at_root_of_unity",
    "rr_root_of_unity_spec",
    "rr_root_of_unity_direct",
]


class ZeroDenominatorError(ZeroDivisionError):
    """Backward evaluation hit a zero denominator at a known depth."""

    def __init__(self, depth: int):
        self.depth = depth
        super().__init__(f"zero denominator in backward pass at depth {depth}")


class DivergenceError(ValueError):
    """The requested continued fraction diverges on its stated domain."""


@dataclass(frozen=True)
class Prefactor:
    """Multiplicative factor base**exponent applied to a converged value."""

    base: object
    exponent: Fraction
    mode: RootMode = RootMode.PRINCIPAL

    def __post_init__(self):
        if self.exponent.denominator not in (1, 5):
            raise ValueError("prefactor exponent denominator must be 1 or 5")

    def apply(self, value, ctx: PrecisionContext):
        num = self.exponent.numerator
        den = self.exponent.denominator
        if den == 1:
            factor = ctx.number(self.base) ** num
        else:
            factor = root(self.base, den, self.mode, ctx) ** num
        return factor * value


@dataclass(frozen=True)
class CFSpec:
    """b0 plus an indexed generator k -> (a_k, b_k), with optional prefactor."""

    b0: object
    terms: Callable[[int], tuple]
    prefactor: Optional[Prefactor] = None
    name: str = ""


class CFStatus(enum.Enum):
    CONVERGED = "converged"
    MAX_ITERATIONS = "max-iterations"
    LIMIT_CYCLE = "limit-cycle"


@dataclass(frozen=True)
class CFResult:
    value: object
    iterations: int
    status: CFStatus
    period: Optional[int] = None

    @property
    def converged(self) -> bool:
        return self.status is CFStatus.CONVERGED


def eval_finite(spec: CFSpec, n: int, ctx: Optional[PrecisionContext] = None):
    """Value of the depth-n truncation, by backward recurrence.

    Exact when b0 and all generated terms are rational and there is no
    fractional prefactor.  Raises ZeroDenominatorError identifying the depth
    where the backward pass divides by zero.
    """
    if n < 0:
        raise ValueError("depth must be nonnegative")
    if n == 0:
        value = spec.b0
    else:
        _, b_n = spec.terms(n)
        v = b_n
        for k in range(n - 1, -1, -1):
            a_next, _ = spec.terms(k + 1)
            if v == 0:
                raise ZeroDenominatorError(k + 1)
            b_k = spec.b0 if k == 0 else spec.terms(k)[1]
            v = b_k + a_next / v
        value = v
    if spec.prefactor is not None:
        if spec.prefactor.exponent.denominator == 1 and ctx is None:
            return spec.prefactor.base ** spec.prefactor.exponent.numerator * value
        if ctx is None:
            raise ValueError("fractional prefactor requires a PrecisionContext")
        return spec.prefactor.apply(value, ctx)
    return value


def convergents(spec: CFSpec, n: int):
    """Yield (k, A_k, B_k) for k = 1..n by the forward recurrence, no rescaling.

    Exact on rational input; used for the determinant identity
    A_k*B_{k-1} - A_{k-1}*B_k = (-1)^(k-1) * prod_{j<=k} a_j.
    """
    a_prev, a_cur = 1, spec.b0
    b_prev, b_cur = 0, 1
    for k in range(1, n + 1):
        a_k, b_k = spec.terms(k)
        a_cur, a_prev = b_k * a_cur + a_k * a_prev, a_cur
        b_cur, b_prev = b_k * b_cur + a_k * b_prev, b_cur
        yield k, a_cur, b_cur


def _detect_cycle(hist: list, period: int, tol, gap_factor) -> bool:
    """Full window: 2*period consecutive convergents repeat at the given lag
    while consecutive ones stay apart.

    The consecutive gap must exceed both tol and gap_factor times the lag
    residual: a genuine attracting cycle separates the two scales without
    bound, whereas even/odd convergents straddling a slowly-approached limit
    keep them within a bounded ratio (so no false cycle is reported there).
    Undefined convergents (a cycle through infinity) match only each other.
    """
    window = 2 * period
    if len(hist) < window + period:
        return False
    for i in range(-window, 0):
        cur, lag, prev = hist[i], hist[i - period], hist[i - 1]
        if cur is None or lag is None:
            if (cur is None) != (lag is None):
                return False
            pdiff = 0
        else:
            pdiff = abs(cur - lag)
            if not pdiff < tol:
                return False
        if cur is None or prev is None:
            continue  # a jump through an undefined convergent is never "converging"
        gap = abs(cur - prev)
        if gap < tol or gap < gap_factor * pdiff:
            return False
    return True


_CYCLE_PERIODS = (2, 3, 4, 5)
_CYCLE_GAP_BITS = 64  # robust margin between cycle gap and lag residual
_HIST_LEN = 16  # covers lag 5 over a 10-wide window
_CYCLE_STRIDE = 16


def eval_infinite(spec: CFSpec, ctx: PrecisionContext) -> CFResult:
    """Evaluate an infinite continued fraction under the context.

    Stops as CONVERGED when two consecutive convergent differences fall below
    the internal threshold and the candidate limit is distinguishable from
    accumulated rounding noise; reports LIMIT_CYCLE(p) when convergents repeat
    at lag p in {2,3,4,5} while consecutive ones stay apart; otherwise runs to
    ctx.max_iter and reports MAX_ITERATIONS.  Transient B_k = 0 is tolerated
    by skipping the undefined convergent.
    """
    mp = ctx.mp
    stop = ctx.stop_tol
    tol = ctx.tol
    floor = ctx.noise_floor
    bits = ctx.bits
    rescale = mp.ldexp(1, -bits)
    gap_factor = mp.ldexp(1, _CYCLE_GAP_BITS)

    a_prev = mp.mpf(1)
    a_cur = ctx.number(spec.b0)
    b_prev = mp.mpf(0)
    b_cur = mp.mpf(1)

    hist: list = []
    last_defined = None

    def finish(value, k, status, period=None):
        if value is not None and spec.prefactor is not None:
            value = spec.prefactor.apply(value, ctx)
        return CFResult(value, k, status, period)

    for k in range(1, ctx.max_iter + 1):
        a_k, b_k = spec.terms(k)
        a_k = ctx.number(a_k)
        b_k = ctx.number(b_k)
        a_cur, a_prev = b_k * a_cur + a_k * a_prev, a_cur
        b_cur, b_prev = b_k * b_cur + a_k * b_prev, b_cur
        if mp.mag(b_cur) > bits or mp.mag(a_cur) > bits:
            a_cur *= rescale
            a_prev *= rescale
            b_cur *= rescale
            b_prev *= rescale
        f = a_cur / b_cur if b_cur != 0 else None
        hist.append(f)
        if len(hist) > _HIST_LEN:
            del hist[0]
        if f is not None:
            last_defined = f
            if len(hist) >= 3 and hist[-2] is not None and hist[-3] is not None:
                if (
                    abs(f - hist[-2]) < stop
                    and abs(f - hist[-3]) < stop
                    and abs(f) > floor
                ):
                    return finish(f, k, CFStatus.CONVERGED)
        if k % _CYCLE_STRIDE == 0:
            for p in _CYCLE_PERIODS:
                if k >= max(200, 50 * p) and _detect_cycle(hist, p, tol, gap_factor):
                    return finish(last_defined, k, CFStatus.LIMIT_CYCLE, p)
    return finish(last_defined, ctx.max_iter, CFStatus.MAX_ITERATIONS)


# -- the Rogers-Ramanujan continued fraction ---------------------------------


def rr_cfspec(q, mode: RootMode = RootMode.PRINCIPAL) -> CFSpec:
    """CFSpec for R(q): prefactor q^(1/5), partial numerators 1, q, q^2, ..."""

    def terms(k: int):
        return (q ** (k - 1), 1)

    return CFSpec(
        b0=0,
        terms=terms,
        prefactor=Prefactor(q, Fraction(1, 5), mode),
        name="rogers-ramanujan",
    )


def rr_cf(q, mode: RootMode = RootMode.PRINCIPAL, ctx: Optional[PrecisionContext] = None) -> CFResult:
    """Evaluate R(q) for 0 < |q| < 1 or q = +-1.

    For |q| > 1 the fraction diverges (DivergenceError).  Unimodular q other
    than +-1 must go through the root-of-unity interface, which handles the
    primitive-root classification.
    """
    if ctx is None:
        ctx = PrecisionContext()
    qv = ctx.number(q)
    if qv == 0:
        raise ValueError("R(q) requires q != 0")
    aq = abs(qv)
    if aq > 1:
        raise DivergenceError("R(q) diverges for |q| > 1")
    if aq == 1 and qv != 1 and qv != -1:
        raise ValueError(
            "unimodular q other than +-1: use rr_at_root_of_unity / "
            "rr_root_of_unity_direct for primitive roots of unity"
        )
    return eval_infinite(rr_cfspec(qv, mode), ctx)


# -- Schur classification at roots of unity ----------------------------------


def legendre5(n: int) -> int:
    """Legendre symbol (n/5): 0 if 5|n, +1 if n = 1,4 (mod 5), else -1."""
    if n <= 0:
        raise ValueError("n must be a positive integer")
    return (0, 1, -1, -1, 1)[n % 5]


@dataclass(frozen=True)
class SchurClassification:
    """Behaviour of R at a primitive n-th root of unity."""

    n: int
    diverges: bool
    lam: Optional[int] = None
    rho: Optional[int] = None
    exponent: Optional[int] = None

    def __post_init__(self):
        if not self.diverges:
            if (self.lam * self.rho * self.n) % 5 != 1:
                raise AssertionError(
                    f"integrality witness failed: lam*rho*n = "
                    f"{self.lam * self.rho * self.n} != 1 (mod 5) for n={self.n}"
                )


def schur_classify(n: int) -> SchurClassification:
    """Classify R at a primitive n-th root of unity.

    Diverges iff 5 | n; otherwise returns lam = (n/5), rho = n mod 5 in
    [1,4], and the exact integer exponent (lam*rho*n - 1)/5.
    """
    if n <= 0:
        raise ValueError("n must be a positive integer")
    if n % 5 == 0:
        return SchurClassification(n=n, diverges=True)
    lam = legendre5(n)
    rho = n % 5
    num = lam * rho * n - 1
    assert num % 5 == 0
    return SchurClassification(n=n, diverges=False, lam=lam, rho=rho, exponent=num // 5)


def _unit_root(ctx: PrecisionContext, num: int, den: int):
    """exp(2*pi*i*num/den) with the exponent reduced mod den exactly."""
    num %= den
    if num == 0:
        return ctx.mp.mpf(1)
    return ctx.mp.expjpi(ctx.mp.mpf(2 * num) / den)


def rr_at_root_of_unity(n: int, j: int = 1, ctx: Optional[PrecisionContext] = None):
    """Value of R at q = exp(2*pi*i*j/n) by the classification formula.

    Returns lam * q^e * R(lam) with e the classification exponent,
    R(+1) = (sqrt(5)-1)/2 and R(-1) = -phi.  Raises DivergenceError if 5 | n.
    """
    if ctx is None:
        ctx = PrecisionContext()
    if math.gcd(j, n) != 1:
        raise ValueError(f"j={j} is not coprime to n={n}: q is not a primitive root")
    cls = schur_classify(n)
    if cls.diverges:
        raise DivergenceError(f"R diverges at primitive {n}-th roots of unity (5 | n)")
    phi = golden_phi(ctx)
    r_lam = 1 / phi if cls.lam == 1 else -phi
    return cls.lam * _unit_root(ctx, j * cls.exponent, n) * r_lam


def rr_root_of_unity_spec(n: int, j: int = 1, ctx: Optional[PrecisionContext] = None) -> CFSpec:
    """CFSpec of the prefactor-free fraction at q = exp(2*pi*i*j/n).

    Powers q^(k-1) are produced by exact exponent reduction mod n and a
    precomputed table of n-th roots, so no precision decays with depth.
    """
    if ctx is None:
        ctx = PrecisionContext()
    table = [_unit_root(ctx, r, n) for r in range(n)]

    def terms(k: int):
        return (table[((k - 1) * j) % n], 1)

    return CFSpec(b0=0, terms=terms, name=f"rr-root-of-unity-{n}-{j}")


def rr_root_of_unity_direct(n: int, j: int = 1, ctx: Optional[PrecisionContext] = None) -> CFResult:
    """Evaluate R at a primitive n-th root of unity from the fraction itself.

    The prefactor-free fraction is evaluated by the forward recurrence; its
    limit F satisfies F = q^e * R(lam), so the Legendre sign lam plays the
    role of the fifth-root prefactor here: the returned value is lam * F,
    directly comparable with rr_at_root_of_unity.  For 5 | n the fraction has
    no limit and the result reports LIMIT_CYCLE or MAX_ITERATIONS.
    """
    if ctx is None:
        ctx = PrecisionContext()
    if math.gcd(j, n) != 1:
        raise ValueError(f"j={j} is not coprime to n={n}: q is not a primitive root")
    res = eval_infinite(rr_root_of_unity_spec(n, j, ctx), ctx)
    if res.status is not CFStatus.CONVERGED or n % 5 == 0:
        return res
    lam = legendre5(n)
    return CFResult(lam * res.value, res.iterations, res.status, res.period)
