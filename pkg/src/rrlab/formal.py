"""Exact truncated Laurent/power series with integer or rational coefficients.

A FormalSeries holds the coefficients of x^offset .. x^order exactly;
exponents below offset are exactly zero, exponents above order are unknown
(truncated).  Arithmetic tracks the known range: a product of series known
through n1 and n2 terms is known through min(n1, n2) terms past its lowest
exponent.  Coefficients stay Python ints whenever possible and fall back to
Fraction otherwise.

By convention elsewhere in this package the variable is t with t^5 = q, so
fractional powers of q live at integer exponents of t (see ``stretch``).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

__all__ = ["FormalSeries", "x_power", "constant", "product_one_minus", "product_one_minus_inv"]


def _norm(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return int(c)
    return c


class FormalSeries:
    """sum of c[e - offset] * x**e for offset <= e <= order, exact."""

    __slots__ = ("offset", "coeffs", "order")

    def __init__(self, coeffs: Sequence, offset: int = 0, order: int | None = None):
        coeffs = [_norm(c) for c in coeffs]
        if order is None:
            if not coeffs:
                raise ValueError("empty coefficient list requires an explicit order")
            order = offset + len(coeffs) - 1
        n = order - offset + 1
        if n < 0:
            raise ValueError("order below offset")
        if len(coeffs) < n:
            coeffs = coeffs + [0] * (n - len(coeffs))
        elif len(coeffs) > n:
            coeffs = coeffs[:n]
        # strip exact leading zeros: they raise the valuation, not the order
        while coeffs and len(coeffs) > 1 and coeffs[0] == 0:
            coeffs.pop(0)
            offset += 1
        self.coeffs = coeffs
        self.offset = offset
        self.order = order

    # -- inspection ----------------------------------------------------------

    @property
    def nterms(self) -> int:
        return self.order - self.offset + 1

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def coeff(self, e: int):
        """Coefficient of x**e; exponents above the known order are an error."""
        if e > self.order:
            raise IndexError(f"coefficient of x^{e} unknown (order {self.order})")
        if e < self.offset:
            return 0
        return self.coeffs[e - self.offset]

    def coeffs_through(self, e: int, start: int = 0) -> list:
        """Coefficients of x^start .. x^e as a plain list."""
        return [self.coeff(i) for i in range(start, e + 1)]

    # -- arithmetic ----------------------------------------------------------

    def _binary_add(self, other, sign: int):
        if not isinstance(other, FormalSeries):
            other = constant(other, self.order)
        order = min(self.order, other.order)
        offset = min(self.offset, other.offset)
        out = [0] * (order - offset + 1)
        for src, s in ((self, 1), (other, sign)):
            for i, c in enumerate(src.coeffs):
                e = src.offset + i
                if e <= order:
                    out[e - offset] += s * c
        return FormalSeries(out, offset, order)

    def __add__(self, other):
        return self._binary_add(other, 1)

    __radd__ = __add__

    def __sub__(self, other):
        return self._binary_add(other, -1)

    def __rsub__(self, other):
        return (-self)._binary_add(other, 1)

    def __neg__(self):
        return FormalSeries([-c for c in self.coeffs], self.offset, self.order)

    def __mul__(self, other):
        if not isinstance(other, FormalSeries):
            return FormalSeries([c * other for c in self.coeffs], self.offset, self.order)
        if self.is_zero() or other.is_zero():
            return FormalSeries([0], 0, self.order + other.order)
        offset = self.offset + other.offset
        n = min(self.nterms, other.nterms)
        out = [0] * n
        for i, a in enumerate(self.coeffs):
            if a == 0 or i >= n:
                continue
            lim = n - i
            for jj, b in enumerate(other.coeffs[:lim]):
                if b != 0:
                    out[i + jj] += a * b
        return FormalSeries(out, offset, offset + n - 1)

    __rmul__ = __mul__

    def reciprocal(self) -> "FormalSeries":
        """Multiplicative inverse; requires a nonzero lowest coefficient."""
        if self.is_zero():
            raise ZeroDivisionError("reciprocal of the zero series")
        c = self.coeffs
        if c[0] == 0:
            raise ZeroDivisionError("reciprocal requires a nonzero lowest coefficient")
        n = self.nterms
        lead = c[0]
        inv_lead = 1 / Fraction(lead) if lead not in (1, -1) else lead
        out = [0] * n
        out[0] = inv_lead
        for j in range(1, n):
            acc = 0
            for i in range(1, j + 1):
                if c[i] != 0:
                    acc += c[i] * out[j - i]
            if lead == 1:
                out[j] = -acc
            elif lead == -1:
                out[j] = acc
            else:
                out[j] = -acc * inv_lead
        return FormalSeries(out, -self.offset, -self.offset + n - 1)

    def __truediv__(self, other):
        if isinstance(other, FormalSeries):
            return self * other.reciprocal()
        return self * (1 / Fraction(other))

    def __pow__(self, m: int):
        if m < 0:
            return self.reciprocal() ** (-m)
        if m == 0:
            return constant(1, max(self.nterms - 1, 0))
        acc = None
        base = self
        while m:
            if m & 1:
                acc = base if acc is None else acc * base
            m >>= 1
            if m:
                base = base * base
        return acc

    # -- reshaping -----------------------------------------------------------

    def shift(self, d: int) -> "FormalSeries":
        """Multiply by x**d (d may be negative)."""
        return FormalSeries(list(self.coeffs), self.offset + d, self.order + d)

    def stretch(self, s: int) -> "FormalSeries":
        """Substitute x -> x**s; gaps are exact zeros, order becomes s*order + s - 1."""
        if s < 1:
            raise ValueError("stretch factor must be >= 1")
        out = [0] * ((self.nterms - 1) * s + 1)
        for i, c in enumerate(self.coeffs):
            out[i * s] = c
        return FormalSeries(out, self.offset * s, self.order * s + s - 1)

    def truncate(self, order: int) -> "FormalSeries":
        if order >= self.order:
            return self
        return FormalSeries(self.coeffs[: order - self.offset + 1], self.offset, order)

    # -- comparison / serialization -------------------------------------------

    def same_through(self, other: "FormalSeries", e: int) -> bool:
        """Exact coefficient equality for every exponent <= e."""
        if e > self.order or e > other.order:
            raise IndexError("comparison beyond known order")
        lo = min(self.offset, other.offset)
        return all(self.coeff(i) == other.coeff(i) for i in range(lo, e + 1))

    def first_mismatch(self, other: "FormalSeries", e: int):
        """Lowest exponent <= e where coefficients differ, or None."""
        lo = min(self.offset, other.offset)
        for i in range(lo, e + 1):
            if self.coeff(i) != other.coeff(i):
                return i
        return None

    def __eq__(self, other):
        if not isinstance(other, FormalSeries):
            return NotImplemented
        return (
            self.order == other.order
            and self.offset == other.offset
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.offset, self.order, tuple(self.coeffs)))

    def to_json(self) -> dict:
        def enc(c):
            if isinstance(c, Fraction):
                return f"{c.numerator}/{c.denominator}"
            return str(c)

        return {
            "lowest_exponent": self.offset,
            "coeffs": [enc(c) for c in self.coeffs],
            "order": self.order,
        }

    @classmethod
    def from_json(cls, data: dict) -> "FormalSeries":
        def dec(s: str):
            if "/" in s:
                num, den = s.split("/")
                return Fraction(int(num), int(den))
            return int(s)

        return cls(
            [dec(s) for s in data["coeffs"]],
            data["lowest_exponent"],
            data["order"],
        )

    def __repr__(self):
        head = ", ".join(str(c) for c in self.coeffs[:8])
        tail = ", ..." if len(self.coeffs) > 8 else ""
        return f"FormalSeries(x^{self.offset}*[{head}{tail}], order={self.order})"


def x_power(e: int, order: int) -> FormalSeries:
    if e > order:
        raise ValueError("x_power beyond requested order")
    return FormalSeries([1], e, order)


def constant(c, order: int) -> FormalSeries:
    return FormalSeries([c], 0, order)


def product_one_minus(exponents: Iterable[int], order: int) -> FormalSeries:
    """prod (1 - x^k) over the given exponents, truncated to the order."""
    out = [0] * (order + 1)
    out[0] = 1
    for k in exponents:
        if k <= 0:
            raise ValueError("exponents must be positive")
        if k > order:
            continue
        for j in range(order, k - 1, -1):
            if out[j - k] != 0:
                out[j] -= out[j - k]
    return FormalSeries(out, 0, order)


def product_one_minus_inv(exponents: Iterable[int], order: int) -> FormalSeries:
    """prod 1/(1 - x^k) over the given exponents, truncated to the order."""
    out = [0] * (order + 1)
    out[0] = 1
    for k in exponents:
        if k <= 0:
            raise ValueError("exponents must be positive")
        if k > order:
            continue
        for j in range(k, order + 1):
            if out[j - k] != 0:
                out[j] += out[j - k]
    return FormalSeries(out, 0, order)
