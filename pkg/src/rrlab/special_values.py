"""Closed-form special values, class invariants, and the quintic machinery.

Closed forms are exact expression trees over integers, the constants pi, e,
and the golden ratio, and rational powers/roots, so they can be evaluated at
any precision.  Every registry entry pairs a nome descriptor with its closed
form; verification evaluates the continued fraction (and, where available,
the infinite product) at the nome and compares.

Class invariants are tabulated for n = 1 and n = 25 and may be extended from
a JSON config file; every loaded entry is validated against the defining
product 2^(-1/4) * q^(-1/24) * chi(q) at q = exp(-pi*sqrt(n)).
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from . import cf as _cf
from . import qseries as _qs
from .numerics import PrecisionContext, RootMode, agree_bits, golden_phi, root

__all__ = [
    "Expr",
    "Integer",
    "Const",
    "Add",
    "Mul",
    "Neg",
    "Div",
    "Root",
    "Power",
    "evaluate",
    "expr_str",
    "parse_prefix",
    "SpecialValueEntry",
    "registry",
    "verify_entry",
    "verify_registry",
    "InvariantTable",
    "InvariantLookupError",
    "InvariantConfigError",
    "c_param",
    "value_from_c",
    "theta_quotient",
    "p_value",
    "quintic_uv",
    "quintic_alpha_beta",
    "R_from_p",
    "R4_from_p",
    "quintic_corollary",
    "QuinticState",
    "resolve_quintic_assignment",
]

log = logging.getLogger(__name__)


# -- closed-form expression trees ----------------------------------------------


class Expr:
    __slots__ = ()


@dataclass(frozen=True)
class Integer(Expr):
    n: int


@dataclass(frozen=True)
class Const(Expr):
    name: str  # "pi", "e", "phi"


@dataclass(frozen=True)
class Add(Expr):
    terms: tuple


@dataclass(frozen=True)
class Mul(Expr):
    factors: tuple


@dataclass(frozen=True)
class Neg(Expr):
    arg: Expr


@dataclass(frozen=True)
class Div(Expr):
    num: Expr
    den: Expr


@dataclass(frozen=True)
class Root(Expr):
    degree: int
    arg: Expr
    mode: RootMode = RootMode.PRINCIPAL


@dataclass(frozen=True)
class Power(Expr):
    base: Expr
    exponent: Fraction
    mode: RootMode = RootMode.PRINCIPAL


def evaluate(expr: Expr, ctx: PrecisionContext):
    """Numeric value of a closed form at context precision (deterministic)."""
    mp = ctx.mp
    if isinstance(expr, Integer):
        return mp.mpf(expr.n)
    if isinstance(expr, Const):
        if expr.name == "pi":
            return +mp.pi
        if expr.name == "e":
            return +mp.e
        if expr.name == "phi":
            return golden_phi(ctx)
        raise ValueError(f"unknown constant {expr.name!r}")
    if isinstance(expr, Add):
        total = mp.mpf(0)
        for t in expr.terms:
            total += evaluate(t, ctx)
        return total
    if isinstance(expr, Mul):
        total = mp.mpf(1)
        for f in expr.factors:
            total *= evaluate(f, ctx)
        return total
    if isinstance(expr, Neg):
        return -evaluate(expr.arg, ctx)
    if isinstance(expr, Div):
        return evaluate(expr.num, ctx) / evaluate(expr.den, ctx)
    if isinstance(expr, Root):
        return root(evaluate(expr.arg, ctx), expr.degree, expr.mode, ctx)
    if isinstance(expr, Power):
        base = evaluate(expr.base, ctx)
        e = expr.exponent
        if e.denominator == 1:
            return base**e.numerator
        return root(base, e.denominator, expr.mode, ctx) ** e.numerator
    raise TypeError(f"not a closed-form node: {expr!r}")


def expr_str(expr: Expr) -> str:
    if isinstance(expr, Integer):
        return str(expr.n)
    if isinstance(expr, Const):
        return expr.name
    if isinstance(expr, Add):
        return "(" + " + ".join(expr_str(t) for t in expr.terms) + ")"
    if isinstance(expr, Mul):
        return "*".join(expr_str(f) for f in expr.factors)
    if isinstance(expr, Neg):
        return f"-{expr_str(expr.arg)}"
    if isinstance(expr, Div):
        return f"({expr_str(expr.num)}/{expr_str(expr.den)})"
    if isinstance(expr, Root):
        if expr.degree == 2:
            return f"sqrt({expr_str(expr.arg)})"
        return f"root({expr.degree}, {expr_str(expr.arg)})"
    if isinstance(expr, Power):
        return f"{expr_str(expr.base)}^({expr.exponent})"
    raise TypeError(f"not a closed-form node: {expr!r}")


# builders used throughout the registry
def _i(n: int) -> Expr:
    return Integer(n)


def _add(*terms) -> Expr:
    return Add(tuple(terms))


def _mul(*factors) -> Expr:
    return Mul(tuple(factors))


def _sub(a, b) -> Expr:
    return Add((a, Neg(b)))


def _div(a, b) -> Expr:
    return Div(a, b)


def _sqrt(x) -> Expr:
    return Root(2, x)


PHI = Const("phi")
SQRT5 = _sqrt(_i(5))


def parse_prefix(obj) -> Expr:
    """Parse the small prefix grammar used by invariant config files.

    Grammar: integers; the strings "phi", "pi", "e"; and JSON lists
    ["+", x, y, ...], ["-", x, y] or ["-", x], ["*", x, y, ...],
    ["/", x, y], ["root", k, x].
    """
    if isinstance(obj, int):
        return Integer(obj)
    if isinstance(obj, str):
        if obj in ("phi", "pi", "e"):
            return Const(obj)
        raise ValueError(f"unknown symbol {obj!r} in closed-form expression")
    if isinstance(obj, list) and obj:
        op, *args = obj
        if op == "+" and len(args) >= 2:
            return Add(tuple(parse_prefix(a) for a in args))
        if op == "-" and len(args) == 1:
            return Neg(parse_prefix(args[0]))
        if op == "-" and len(args) == 2:
            return _sub(parse_prefix(args[0]), parse_prefix(args[1]))
        if op == "*" and len(args) >= 2:
            return Mul(tuple(parse_prefix(a) for a in args))
        if op == "/" and len(args) == 2:
            return Div(parse_prefix(args[0]), parse_prefix(args[1]))
        if op == "root" and len(args) == 2 and isinstance(args[0], int):
            return Root(args[0], parse_prefix(args[1]))
        raise ValueError(f"malformed closed-form expression: {obj!r}")
    raise ValueError(f"malformed closed-form expression: {obj!r}")


# -- parametrized value machinery -----------------------------------------------


def c_param(a, b, ctx: PrecisionContext):
    """c with 2c = 1 + ((a+b)/(a-b)) * sqrt(5); requires a != b."""
    a = ctx.number(a)
    b = ctx.number(b)
    if a == b:
        raise ValueError("c_param requires distinct a and b")
    return (1 + (a + b) / (a - b) * ctx.mp.sqrt(5)) / 2


def value_from_c(c, ctx: PrecisionContext):
    """sqrt(c^2 + 1) - c; strictly decreasing, maps (0, inf) into (0, 1)."""
    c = ctx.number(c)
    return ctx.mp.sqrt(c * c + 1) - c


def _c_expr(a: Expr, b: Expr) -> Expr:
    return _div(_add(_i(1), _mul(_div(_add(a, b), _sub(a, b)), SQRT5)), _i(2))


def _value_from_c_expr(c: Expr) -> Expr:
    return _sub(_sqrt(_add(_mul(c, c), _i(1))), c)


# -- class invariants -----------------------------------------------------------


class InvariantLookupError(KeyError):
    pass


class InvariantConfigError(ValueError):
    pass


class InvariantTable:
    """Closed forms for class invariants, keyed by positive rational n.

    Seeded with n = 1 -> 1 and n = 25 -> phi.  Additional entries load from a
    JSON file: a list of {"n": "p/q", "closed_form": <prefix expression>},
    each validated against the defining product before acceptance.
    """

    def __init__(self):
        self._entries: dict = {
            Fraction(1): Integer(1),
            Fraction(25): PHI,
        }

    def known(self) -> list:
        return sorted(self._entries)

    def get(self, n) -> Expr:
        n = Fraction(n)
        try:
            return self._entries[n]
        except KeyError:
            raise InvariantLookupError(
                f"class invariant for n = {n} is not tabulated; supply it via an "
                f"invariants config file (JSON list of {{n, closed_form}})"
            ) from None

    def direct_value(self, n, ctx: PrecisionContext):
        """2^(-1/4) * q^(-1/24) * chi(q) at q = exp(-pi*sqrt(n))."""
        mp = ctx.mp
        n = Fraction(n)
        q = mp.exp(-mp.pi * mp.sqrt(ctx.real(n)))
        return mp.root(2, 4) ** -1 * q ** (-mp.mpf(1) / 24) * _qs.chi(q, ctx)

    def validate(self, n, expr: Expr, ctx: PrecisionContext):
        n = Fraction(n)
        claimed = evaluate(expr, ctx)
        direct = self.direct_value(n, ctx)
        dev = abs(claimed - direct)
        if not dev < ctx.tol:
            raise InvariantConfigError(
                f"invariant entry n = {n} fails the chi-product cross-check "
                f"2^(-1/4) q^(-1/24) chi(q) at q = exp(-pi*sqrt(n)): "
                f"|claimed - direct| = {ctx.mp.nstr(dev, 8)}"
            )
        if n != 1 and not claimed > 1:
            raise InvariantConfigError(f"invariant entry n = {n} must exceed 1")

    def add(self, n, expr: Expr, ctx: PrecisionContext):
        self.validate(n, expr, ctx)
        self._entries[Fraction(n)] = expr

    def load_config(self, path, ctx: PrecisionContext):
        """Load and validate entries from a JSON config file."""
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
        if not isinstance(data, list):
            raise InvariantConfigError("invariants config must be a JSON list")
        for item in data:
            try:
                n = Fraction(item["n"])
                expr = parse_prefix(item["closed_form"])
            except (KeyError, ValueError, TypeError, ZeroDivisionError) as exc:
                raise InvariantConfigError(f"malformed invariants entry {item!r}: {exc}") from exc
            self.add(n, expr, ctx)


_DEFAULT_TABLE = InvariantTable()


def default_invariants() -> InvariantTable:
    return _DEFAULT_TABLE


def invariant_G(n, table: Optional[InvariantTable] = None) -> Expr:
    """Stored closed form of the class invariant for rational n."""
    return (table or _DEFAULT_TABLE).get(n)


def theta_quotient(n, ctx: PrecisionContext, table: Optional[InvariantTable] = None):
    """(1/sqrt(5)) * (1 + 2*G_{25n}/G_n^5)^(1/2) from tabulated invariants."""
    table = table or _DEFAULT_TABLE
    n = Fraction(n)
    g_n = evaluate(table.get(n), ctx)
    g_25n = evaluate(table.get(25 * n), ctx)
    mp = ctx.mp
    return mp.sqrt(1 + 2 * g_25n / g_n**5) / mp.sqrt(5)


def theta_quotient_direct(n, ctx: PrecisionContext):
    """Direct theta-series ratio phi(e^(-5 pi sqrt n)) / phi(e^(-pi sqrt n))."""
    mp = ctx.mp
    s = mp.sqrt(ctx.real(Fraction(n)))
    return _qs.theta_phi(mp.exp(-5 * mp.pi * s), ctx) / _qs.theta_phi(mp.exp(-mp.pi * s), ctx)


# -- quintic (p, u, v) machinery -------------------------------------------------


def p_value(q, ctx: PrecisionContext):
    """p = 4q * chi(q) / chi(q^5)^5 for 0 < |q| < 1."""
    q = ctx.number(q)
    if q == 0 or abs(q) >= 1:
        raise ValueError("p_value requires 0 < |q| < 1")
    return 4 * q * _qs.chi(q, ctx) / _qs.chi(q**5, ctx) ** 5


def quintic_uv(p, ctx: PrecisionContext):
    """u (+ sign) and v (- sign) from the explicit radical display.

    u, v = {(p/2) * ((p-1)^2 + 7 +- (4-p)*(4+p^2)^(1/2))}^(1/5), real fifth
    roots; valid for real p in (0, 4).
    """
    p = ctx.number(p)
    if isinstance(p, ctx.mp.mpc) or not (0 < p < 4):
        raise ValueError("quintic_uv requires real p in (0, 4)")
    x = (p - 1) ** 2 + 7
    y = (4 - p) * ctx.mp.sqrt(4 + p * p)
    u = root(p / 2 * (x + y), 5, RootMode.REAL_ODD, ctx)
    v = root(p / 2 * (x - y), 5, RootMode.REAL_ODD, ctx)
    return u, v


def quintic_alpha_beta(p, ctx: PrecisionContext):
    """Roots alpha >= beta of x^2 - ((p-1)^2 + 7)x + p^3 = 0.

    The constant term is p^3, not p^2: only then do u = (alpha*p)^(1/5) and
    v = (beta*p)^(1/5) reproduce the explicit radical display and satisfy
    u*v = p.  (With constant term p^2 the root product would force
    u*v = p^(4/5), contradicting the two quotient expressions for R.)
    """
    p = ctx.number(p)
    x = (p - 1) ** 2 + 7
    y = (4 - p) * ctx.mp.sqrt(4 + p * p)
    return (x + y) / 2, (x - y) / 2


def R_from_p(p, ctx: PrecisionContext):
    """R(q) = u / (sqrt(p+1) + 1) where p is the quintic parameter of q."""
    u, _ = quintic_uv(p, ctx)
    return u / (ctx.mp.sqrt(ctx.number(p) + 1) + 1)


def R4_from_p(p, ctx: PrecisionContext):
    """R(q^4) = v / (sqrt(p+1) + 1) where p is the quintic parameter of q."""
    _, v = quintic_uv(p, ctx)
    return v / (ctx.mp.sqrt(ctx.number(p) + 1) + 1)


def quintic_corollary(p, ctx: PrecisionContext):
    """(2/u, 2/v): the asserted values of 1/R(q) - R(q^4) and 1/R(q^4) - R(q)."""
    u, v = quintic_uv(p, ctx)
    return 2 / u, 2 / v


@dataclass(frozen=True)
class QuinticState:
    """Resolved quintic data at a nome q, cross-checked against the fraction."""

    p: object
    u: object
    v: object
    alpha: object
    beta: object
    r_q: object
    r_q4: object
    assignment: str
    note: str


def resolve_quintic_assignment(q, ctx: PrecisionContext) -> QuinticState:
    """Compute (p, u, v) at q and resolve the (u, v) pairing by the CF oracle.

    Both candidate assignments of {u, v} to {R(q), R(q^4)} are compared with
    direct continued-fraction evaluations; the matching one is recorded.
    """
    mp = ctx.mp
    q = ctx.number(q)
    p = p_value(q, ctx)
    u, v = quintic_uv(p, ctx)
    alpha, beta = quintic_alpha_beta(p, ctx)
    s = mp.sqrt(p + 1) + 1
    cand_u, cand_v = u / s, v / s
    direct_q = _cf.rr_cf(q, RootMode.PRINCIPAL, ctx).value
    direct_q4 = _cf.rr_cf(q**4, RootMode.PRINCIPAL, ctx).value
    straight = max(abs(cand_u - direct_q), abs(cand_v - direct_q4))
    swapped = max(abs(cand_v - direct_q), abs(cand_u - direct_q4))
    if straight <= swapped:
        r_q, r_q4, assignment = cand_u, cand_v, "u->R(q), v->R(q^4)"
    else:
        r_q, r_q4, assignment = cand_v, cand_u, "v->R(q), u->R(q^4)"
    note = (
        "quadratic constant term taken as p^3 (root product = p^3, so u*v = p); "
        f"pair assignment resolved by CF oracle: {assignment}"
    )
    log.info("quintic resolution at q=%s: %s", mp.nstr(q, 8), note)
    return QuinticState(
        p=p, u=u, v=v, alpha=alpha, beta=beta, r_q=r_q, r_q4=r_q4,
        assignment=assignment, note=note,
    )


# -- the special-value registry ---------------------------------------------------


@dataclass(frozen=True)
class SpecialValueEntry:
    """A named nome, its closed form, and where the value was first recorded."""

    name: str
    kind: str  # "R-value", "S-value", "theta-quotient"
    q_descriptor: _qs.QPoint | int  # QPoint, or +-1 for the unit-circle endpoints
    closed_form: Expr
    provenance: str

    def closed_value(self, ctx: PrecisionContext):
        return evaluate(self.closed_form, ctx)

    def q_value(self, ctx: PrecisionContext):
        if isinstance(self.q_descriptor, _qs.QPoint):
            return self.q_descriptor.value(ctx)
        return ctx.mp.mpf(self.q_descriptor)


def _qp(n) -> _qs.QPoint:
    return _qs.QPoint(sqrt_arg=Fraction(n))


def _registry_entries() -> tuple:
    half = _div(_i(1), _i(2))
    inv_phi = _div(_sub(SQRT5, _i(1)), _i(2))

    eq2 = SpecialValueEntry(
        name="eq2",
        kind="R-value",
        q_descriptor=_qp(4),  # q = exp(-2 pi)
        closed_form=_sub(_sqrt(_div(_add(_i(5), SQRT5), _i(2))), PHI),
        provenance="first letter to Hardy, 16 January 1913",
    )
    eq3 = SpecialValueEntry(
        name="eq3",
        kind="S-value",
        q_descriptor=_qp(1),  # S at exp(-pi)
        closed_form=_sub(_sqrt(_div(_sub(_i(5), SQRT5), _i(2))), inv_phi),
        provenance="first letter to Hardy, 16 January 1913",
    )
    eq5_inner = _sub(
        _mul(Power(_i(5), Fraction(3, 4)), Power(inv_phi, Fraction(5, 2))),
        _i(1),
    )
    eq5 = SpecialValueEntry(
        name="eq5",
        kind="R-value",
        q_descriptor=_qp(20),  # q = exp(-2 pi sqrt 5)
        closed_form=_sub(_div(SQRT5, _add(_i(1), Root(5, eq5_inner))), PHI),
        provenance="second letter to Hardy, 27 February 1913 (case n = 20)",
    )
    golden_r = SpecialValueEntry(
        name="golden-r",
        kind="R-value",
        q_descriptor=1,
        closed_form=inv_phi,
        provenance="elementary evaluation at q = 1",
    )
    golden_s = SpecialValueEntry(
        name="golden-s",
        kind="S-value",
        q_descriptor=1,
        closed_form=PHI,
        provenance="elementary evaluation at q = 1",
    )
    a7 = Power(_i(5), Fraction(1, 4))
    eq7 = SpecialValueEntry(
        name="eq7",
        kind="R-value",
        q_descriptor=_qp(16),  # q = exp(-4 pi)
        closed_form=_value_from_c_expr(_c_expr(a7, _i(1))),
        provenance="first notebook, page 311 (a = 5^(1/4), b = 1)",
    )
    a8 = Power(_i(60), Fraction(1, 4))
    b8 = Add((_i(2), Neg(_sqrt(_i(3))), SQRT5))
    eq8 = SpecialValueEntry(
        name="eq8",
        kind="R-value",
        q_descriptor=_qp(36),  # q = exp(-6 pi)
        closed_form=_value_from_c_expr(_c_expr(a8, b8)),
        provenance="first notebook, page 311 (a = 60^(1/4), b = 2 - sqrt(3) + sqrt(5))",
    )
    eq7_explicit = SpecialValueEntry(
        name="eq7-explicit",
        kind="R-value",
        q_descriptor=_qp(16),
        closed_form=_mul(
            PHI,
            _div(
                _sub(_sqrt(_sub(_mul(_i(5), SQRT5), _i(10))), _i(1)),
                _add(_i(1), _sqrt(_sub(_i(5), _mul(_i(2), SQRT5)))),
            ),
        ),
        provenance="explicit radical form of the value at exp(-4 pi)",
    )
    chan_s3 = SpecialValueEntry(
        name="chan-s-3",
        kind="S-value",
        q_descriptor=_qp(3),  # S at exp(-pi sqrt 3)
        closed_form=_div(
            Add((Neg(_i(3)), Neg(SQRT5), _sqrt(_mul(_i(6), _add(_i(5), SQRT5))))),
            _i(4),
        ),
        provenance="Chan (1995), via modular equations",
    )
    # This value is sometimes printed with the radical in the nome inverted
    # (exp(-pi*sqrt(5/3))); that form misses by ~0.22, while at
    # exp(-pi*sqrt(3/5)) the identity holds to full precision.
    chan_berndt = SpecialValueEntry(
        name="chan-berndt-s-3-5",
        kind="S-value",
        q_descriptor=_qp(Fraction(3, 5)),  # S at exp(-pi sqrt(3/5))
        closed_form=Power(
            _div(
                Add((
                    Neg(_mul(_i(5), SQRT5)),
                    Neg(_i(3)),
                    _sqrt(_mul(_i(30), _add(_i(5), SQRT5))),
                )),
                _i(4),
            ),
            Fraction(1, 5),
        ),
        provenance="Berndt-Chan (1995), p. 899",
    )
    theta1 = SpecialValueEntry(
        name="theta-ratio-1",
        kind="theta-quotient",
        q_descriptor=_qp(1),
        closed_form=_div(_i(1), _sqrt(_sub(_mul(_i(5), SQRT5), _i(10)))),
        provenance="theta quotient at n = 1 after algebraic simplification",
    )
    return (
        eq2, eq3, eq5, golden_r, golden_s, eq7, eq8, eq7_explicit,
        chan_s3, chan_berndt, theta1,
    )


_REGISTRY = _registry_entries()


def registry() -> tuple:
    """All special-value entries, in a fixed order."""
    return _REGISTRY


def _direct_values(entry: SpecialValueEntry, ctx: PrecisionContext) -> dict:
    """Direct evaluations for an entry: CF route and, when defined, product route."""
    out = {}
    if entry.kind == "theta-quotient":
        n = entry.q_descriptor.sqrt_arg
        out["theta-series-ratio"] = theta_quotient_direct(n, ctx)
        out["invariant-formula"] = theta_quotient(n, ctx)
        return out
    q = entry.q_value(ctx)
    if entry.kind == "R-value":
        res = _cf.rr_cf(q, RootMode.PRINCIPAL, ctx)
        if not res.converged:
            raise RuntimeError(f"{entry.name}: continued fraction did not converge")
        out["cf"] = res.value
        if abs(q) < 1:
            out["product"] = _qs.R_product(q, RootMode.PRINCIPAL, ctx)
    else:  # S-value
        out["cf"] = _qs.S(q, ctx, method="cf")
        if q < 1:
            out["product"] = _qs.S(q, ctx, method="product")
    return out


def verify_entry(entry: SpecialValueEntry, ctx: PrecisionContext) -> dict:
    """Compare the closed form with every direct route; report the worst case."""
    closed = entry.closed_value(ctx)
    routes = _direct_values(entry, ctx)
    max_dev = ctx.mp.mpf(0)
    worst_direct = None
    for name, val in routes.items():
        dev = abs(val - closed)
        if dev >= max_dev:
            max_dev = dev
            worst_direct = val
    return {
        "name": entry.name,
        "kind": entry.kind,
        "provenance": entry.provenance,
        "closed": closed,
        "direct": worst_direct,
        "routes": routes,
        "abs_dev": max_dev,
        "agree_bits": agree_bits(worst_direct, closed, ctx),
        "passed": bool(max_dev < ctx.tol),
    }


def verify_registry(ctx: PrecisionContext, names: Optional[list] = None) -> list:
    """Verify selected entries (all by default); returns one record per entry."""
    wanted = {n for n in names} if names else None
    records = []
    for entry in _REGISTRY:
        if wanted is not None and entry.name not in wanted:
            continue
        records.append(verify_entry(entry, ctx))
    if wanted:
        missing = wanted - {r["name"] for r in records}
        if missing:
            raise KeyError(f"unknown special-value entries: {sorted(missing)}")
    return records
