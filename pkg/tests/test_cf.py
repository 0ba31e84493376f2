from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rrlab.cf import (
    CFSpec,
    CFStatus,
    DivergenceError,
    Prefactor,
    ZeroDenominatorError,
    convergents,
    eval_finite,
    eval_infinite,
    legendre5,
    rr_at_root_of_unity,
    rr_cf,
    rr_root_of_unity_direct,
    rr_root_of_unity_spec,
    schur_classify,
)
from rrlab.numerics import PrecisionContext, RootMode, agree_bits, golden_phi
from rrlab.qseries import R_product

# sqrt(pi*e/2) - sum 1/(2n+1)!!, computed independently at 320 bits
CF2_70 = "0.6556795424187984715438712307308112833992823328704620280536861587342"


def _example_spec():
    # 1 + 1/1 + 2/1 + 3/1
    return CFSpec(b0=Fraction(1), terms=lambda k: (Fraction(k), Fraction(1)))


def test_finite_example_five_thirds():
    assert eval_finite(_example_spec(), 3) == Fraction(5, 3)


def test_finite_depth_zero_returns_b0():
    assert eval_finite(_example_spec(), 0) == Fraction(1)


def test_finite_golden_convergent_is_fibonacci_ratio():
    golden = CFSpec(b0=Fraction(1), terms=lambda k: (Fraction(1), Fraction(1)))
    assert eval_finite(golden, 9) == Fraction(89, 55)


def test_finite_zero_denominator_reports_depth():
    # tail value at depth 1 is b1 + a2/b2 = 1 + 1/(-1) = 0
    spec = CFSpec(b0=Fraction(0), terms=lambda k: (Fraction(1), Fraction(1) if k == 1 else Fraction(-1)))
    with pytest.raises(ZeroDenominatorError) as err:
        eval_finite(spec, 2)
    assert err.value.depth == 1


def test_prefactor_denominator_validation():
    with pytest.raises(ValueError):
        Prefactor(2, Fraction(1, 3))


def test_finite_fractional_prefactor_needs_context(ctx):
    spec = CFSpec(b0=Fraction(1), terms=lambda k: (Fraction(1), Fraction(1)),
                  prefactor=Prefactor(2, Fraction(1, 5)))
    with pytest.raises(ValueError):
        eval_finite(spec, 2)
    val = eval_finite(spec, 2, ctx)
    assert abs(val - ctx.mp.root(2, 5) * Fraction(3, 2)) < ctx.tol


@given(
    seeds=st.lists(st.tuples(st.integers(1, 9), st.integers(1, 9)), min_size=1, max_size=8),
    depth=st.integers(1, 60),
)
@settings(max_examples=40, deadline=None)
def test_backward_equals_forward_exactly(seeds, depth):
    def terms(k):
        a, b = seeds[(k - 1) % len(seeds)]
        return (Fraction(a), Fraction(b))

    spec = CFSpec(b0=Fraction(1), terms=terms)
    *_, (k, A, B) = convergents(spec, depth)
    assert k == depth
    assert eval_finite(spec, depth) == Fraction(A, B)


def test_backward_equals_forward_depth_200():
    spec = CFSpec(b0=Fraction(1), terms=lambda k: (Fraction(k), Fraction(1)))
    *_, (k, A, B) = convergents(spec, 200)
    assert eval_finite(spec, 200) == Fraction(A, B)


@given(seeds=st.lists(st.tuples(st.integers(1, 5), st.integers(1, 5)), min_size=1, max_size=6))
@settings(max_examples=30, deadline=None)
def test_determinant_identity(seeds):
    def terms(k):
        a, b = seeds[(k - 1) % len(seeds)]
        return (Fraction(a), Fraction(b))

    spec = CFSpec(b0=Fraction(2), terms=terms)
    prev_A, prev_B = spec.b0, Fraction(1)
    prod = Fraction(1)
    for k, A, B in convergents(spec, 50):
        prod *= terms(k)[0]
        assert A * prev_B - prev_A * B == (-1) ** (k - 1) * prod
        prev_A, prev_B = A, B


def test_golden_infinite(ctx):
    res = eval_infinite(CFSpec(b0=1, terms=lambda k: (1, 1)), ctx)
    assert res.status is CFStatus.CONVERGED
    assert abs(res.value - golden_phi(ctx)) < ctx.tol


def test_rr_cf_small_q_matches_product(ctx):
    q = ctx.real(Fraction(1, 100))
    res = rr_cf(q, ctx=ctx)
    assert res.status is CFStatus.CONVERGED
    assert agree_bits(res.value, R_product(q, ctx=ctx), ctx) >= ctx.bits - ctx.guard_bits


def test_cf2_value(ctx):
    def terms(k):
        return (1 if k == 1 else k - 1, 1)

    res = eval_infinite(CFSpec(b0=0, terms=terms), ctx)
    assert res.status is CFStatus.CONVERGED
    assert abs(res.value - ctx.mp.mpf(CF2_70)) < ctx.mp.mpf(10) ** -65


def test_rr_cf_at_one(ctx):
    res = rr_cf(1, ctx=ctx)
    assert res.status is CFStatus.CONVERGED
    assert abs(res.value - (ctx.mp.sqrt(5) - 1) / 2) < ctx.tol


def test_rr_cf_at_minus_one_real_odd(ctx):
    res = rr_cf(-1, RootMode.REAL_ODD, ctx)
    assert abs(res.value + golden_phi(ctx)) < ctx.tol


def test_rr_cf_at_exp_minus_2pi(ctx):
    q = ctx.mp.exp(-2 * ctx.mp.pi)
    closed = ctx.mp.sqrt((5 + ctx.mp.sqrt(5)) / 2) - golden_phi(ctx)
    res = rr_cf(q, ctx=ctx)
    assert abs(res.value - closed) < ctx.mp.mpf(10) ** -60


def test_rr_cf_domain_errors(ctx):
    with pytest.raises(DivergenceError):
        rr_cf(ctx.real(Fraction(3, 2)), ctx=ctx)
    with pytest.raises(ValueError):
        rr_cf(0, ctx=ctx)
    with pytest.raises(ValueError):
        rr_cf(ctx.mp.expjpi(ctx.mp.mpf(2) / 3), ctx=ctx)  # unimodular non-real


def test_max_iterations_status(ctx):
    small = PrecisionContext(256, 32, max_iter=50)
    res = rr_cf(small.real(Fraction(9, 10)), ctx=small)
    assert res.status is CFStatus.MAX_ITERATIONS
    assert res.iterations == 50


def test_legendre5_examples():
    assert legendre5(4) == 1
    assert legendre5(7) == -1
    assert legendre5(10) == 0
    assert [legendre5(n) for n in (1, 2, 3, 4)] == [1, -1, -1, 1]


def test_schur_classify_examples():
    assert schur_classify(5).diverges
    assert schur_classify(10).diverges
    c2 = schur_classify(2)
    assert (c2.lam, c2.rho, c2.exponent) == (-1, 2, -1)
    c3 = schur_classify(3)
    assert (c3.lam, c3.rho, c3.exponent) == (-1, 3, -2)
    c1 = schur_classify(1)
    assert (c1.lam, c1.rho, c1.exponent) == (1, 1, 0)


def test_schur_integrality_small_sweep():
    for n in range(1, 500):
        cls = schur_classify(n)
        if not cls.diverges:
            assert (cls.lam * cls.rho * n) % 5 == 1
            assert 1 <= cls.rho <= 4


def test_rr_at_root_of_unity_values(ctx):
    assert abs(rr_at_root_of_unity(1, 1, ctx) - (ctx.mp.sqrt(5) - 1) / 2) < ctx.tol
    assert abs(rr_at_root_of_unity(2, 1, ctx) + golden_phi(ctx)) < ctx.tol
    # n=3: lambda=-1, e=-2, q^(-2) = q, so R(omega) = phi * omega
    omega = ctx.mp.expjpi(ctx.mp.mpf(2) / 3)
    assert abs(rr_at_root_of_unity(3, 1, ctx) - golden_phi(ctx) * omega) < ctx.tol


def test_rr_at_root_of_unity_errors(ctx):
    with pytest.raises(DivergenceError):
        rr_at_root_of_unity(5, 1, ctx)
    with pytest.raises(ValueError):
        rr_at_root_of_unity(9, 3, ctx)  # j not coprime to n


def test_direct_root_of_unity_agrees_with_formula(ctx):
    for n, j in ((2, 1), (3, 1), (4, 1), (7, 3), (11, 4)):
        direct = rr_root_of_unity_direct(n, j, ctx)
        assert direct.status is CFStatus.CONVERGED
        formula = rr_at_root_of_unity(n, j, ctx)
        assert abs(direct.value - formula) < ctx.mp.mpf(10) ** -60


def test_limit_cycle_detection(ctx):
    # K(-1/1): convergents cycle exactly through (-1, undefined, 0)
    res = eval_infinite(CFSpec(b0=0, terms=lambda k: (-1, 1)), ctx)
    assert res.status is CFStatus.LIMIT_CYCLE
    assert res.period == 3


def test_quintic_root_never_converges_quickly(ctx):
    small = PrecisionContext(256, 32, max_iter=3000)
    res = eval_infinite(rr_root_of_unity_spec(5, 1, small), small)
    assert res.status is not CFStatus.CONVERGED
