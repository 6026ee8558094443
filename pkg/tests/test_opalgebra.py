"""Normal-ordered operator algebra: ordering rules, ring laws, adjoints."""

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dunklops._rat import RAT
from dunklops.coeffring import Coefficient, ZRat, trig
from dunklops.cyclofield import ctx_new
from dunklops.errors import AlgebraError, FieldError
from dunklops.opalgebra import (OpExpr, anticommutator, commutator, op_I,
                                op_R, op_coeff, op_dphi, op_dr, op_one,
                                op_param, op_r, op_scalar, op_zero)

# ---------------------------------------------------------------------------
# normal ordering
# ---------------------------------------------------------------------------


def test_derivatives_past_multiplication_ops():
    ctx = ctx_new(3)
    r = op_r(ctx)
    t = op_coeff(ctx, trig(ctx, "tan_shift", 0))
    sec2 = op_coeff(ctx, trig(ctx, "sec2_shift", 0))
    assert op_dr(ctx) * r == r * op_dr(ctx) + op_one(ctx)
    assert op_dphi(ctx) * t == t * op_dphi(ctx) + sec2
    # second order Leibniz: dphi^2 c = c dphi^2 + 2 c' dphi + c''
    dphi = op_dphi(ctx)
    c1 = trig(ctx, "sec2_shift", 0)
    c2 = c1.d_phi()
    expect = (t * dphi * dphi + 2 * op_coeff(ctx, c1) * dphi
              + op_coeff(ctx, c2))
    assert dphi * dphi * t == expect
    # dr and dphi hit independent variables
    assert op_dphi(ctx) * r == r * op_dphi(ctx)
    assert op_dr(ctx) * t == t * op_dr(ctx)


def test_group_elements_past_multiplication_ops():
    ctx = ctx_new(4)
    c = trig(ctx, "cot_shift", 1)
    assert op_R(ctx) * op_coeff(ctx, c) == op_coeff(ctx, c.rotate_n(1)) * op_R(ctx)
    assert op_I(ctx) * op_coeff(ctx, c) == op_coeff(ctx, c.reflect()) * op_I(ctx)
    assert op_R(ctx) * op_dr(ctx) == op_dr(ctx) * op_R(ctx)
    assert op_R(ctx) * op_dphi(ctx) == op_dphi(ctx) * op_R(ctx)
    assert op_I(ctx) * op_dr(ctx) == op_dr(ctx) * op_I(ctx)
    assert op_I(ctx) * op_dphi(ctx) == -op_dphi(ctx) * op_I(ctx)


def test_group_multiplication_table():
    for k in (1, 2, 3):
        ctx = ctx_new(k)
        two_k = 2 * k
        R, I = op_R(ctx), op_I(ctx)
        assert R ** two_k == op_one(ctx)
        assert I * I == op_one(ctx)
        for i in range(two_k):
            for j in range(two_k):
                assert op_R(ctx, i) * op_R(ctx, j) == op_R(ctx, i + j)
            assert I * op_R(ctx, i) == op_R(ctx, -i) * I


def test_mixed_term_product_is_fully_ordered():
    ctx = ctx_new(2)
    x = op_coeff(ctx, trig(ctx, "tan_k")) * op_dphi(ctx) * op_I(ctx)
    y = op_r(ctx, -1) * op_dr(ctx) * op_R(ctx)
    prod = x * y
    for (p, q, i, e) in prod.terms:
        assert p >= 0 and q >= 0 and 0 <= i < 4 and e in (0, 1)
    assert prod.max_orders() == (1, 1)


# ---------------------------------------------------------------------------
# linear structure, coercion, misc structure
# ---------------------------------------------------------------------------


def test_zero_one_and_coercion():
    ctx = ctx_new(2)
    x = op_dphi(ctx) + op_coeff(ctx, trig(ctx, "sec_k"))
    assert x + op_zero(ctx) == x
    assert x * op_one(ctx) == x == op_one(ctx) * x
    assert x - x == op_zero(ctx)
    assert not op_zero(ctx)
    assert bool(x)
    assert 3 * x == x + x + x
    assert RAT(1, 2) * (x + x) == x
    assert x + 1 == x + op_one(ctx)
    assert 1 - x == op_one(ctx) - x
    assert op_scalar(ctx, 5) == 5 * op_one(ctx)
    assert trig(ctx, "tan_k") * x == op_coeff(ctx, trig(ctx, "tan_k")) * x


def test_items_and_counts():
    ctx = ctx_new(2)
    x = op_dr(ctx) + op_dphi(ctx) + op_I(ctx)
    assert x.term_count() == 3
    assert [key for key, _ in x.items()] == [(0, 0, 0, 1), (0, 1, 0, 0),
                                             (1, 0, 0, 0)]
    assert x.max_orders() == (1, 1)


def test_param_ops():
    ctx = ctx_new(2)
    ab = op_param(ctx, "a") * op_param(ctx, "b")
    ((key, c),) = ab.items()
    assert key == (0, 0, 0, 0)
    assert list(c.terms) == [(0, 1, 1, 0)]
    assert op_param(ctx, "w2", 2) * op_r(ctx, 4) == op_r(ctx, 2) \
        * op_coeff(ctx, Coefficient.monomial(ctx, m=2, w2=2))
    with pytest.raises(AlgebraError):
        op_param(ctx, "c")
    with pytest.raises(AlgebraError):
        op_param(ctx, "a", -1)


def test_mixed_contexts_rejected():
    with pytest.raises(FieldError):
        _ = op_dr(ctx_new(2)) * op_dr(ctx_new(3))
    with pytest.raises(FieldError):
        _ = op_dr(ctx_new(2)) + op_dr(ctx_new(3))


def test_pow_rejects_negative():
    with pytest.raises(TypeError):
        _ = op_R(ctx_new(2)) ** (-1)


def test_commutator_combinators():
    ctx = ctx_new(2)
    x, y = op_dphi(ctx), op_coeff(ctx, trig(ctx, "tan_k"))
    assert commutator(x, y) == x * y - y * x
    assert anticommutator(x, y) == x * y + y * x
    assert commutator(x, x) == op_zero(ctx)


def test_equal_ops_hash_equal():
    ctx = ctx_new(3)
    x = op_dphi(ctx) * op_coeff(ctx, trig(ctx, "tan_shift", 1))
    y = (op_coeff(ctx, trig(ctx, "tan_shift", 1)) * op_dphi(ctx)
         + op_coeff(ctx, trig(ctx, "sec2_shift", 1)))
    assert x == y and hash(x) == hash(y)
    assert len({x, y}) == 1


# ---------------------------------------------------------------------------
# adjoints
# ---------------------------------------------------------------------------


def test_adjoint_generator_table():
    for k in (1, 2, 3):
        ctx = ctx_new(k)
        assert op_dphi(ctx).adjoint() == -op_dphi(ctx)
        assert op_dr(ctx).adjoint() == -(op_dr(ctx) + op_r(ctx, -1))
        assert op_I(ctx).adjoint() == op_I(ctx)
        for i in range(2 * k):
            assert op_R(ctx, i).adjoint() == op_R(ctx, -i)
        # real multiplication operators are self-adjoint
        for c in (op_r(ctx, 3), op_param(ctx, "a"),
                  op_coeff(ctx, trig(ctx, "tan_k"))):
            assert c.adjoint() == c
        # scalars conjugate
        ii = op_scalar(ctx, ctx.imag_unit())
        assert ii.adjoint() == -ii


def test_adjoint_is_antimultiplicative_on_examples():
    ctx = ctx_new(3)
    x = op_dr(ctx) * op_coeff(ctx, trig(ctx, "csc2_k")) + op_I(ctx)
    y = op_dphi(ctx) * op_R(ctx, 2)
    assert (x * y).adjoint() == y.adjoint() * x.adjoint()
    assert (x + y).adjoint() == x.adjoint() + y.adjoint()
    assert x.adjoint().adjoint() == x


# ---------------------------------------------------------------------------
# projection onto dihedral invariants
# ---------------------------------------------------------------------------


def test_project_identity_drops_group_part():
    ctx = ctx_new(2)
    t = trig(ctx, "tan_k")
    c = trig(ctx, "csc2_shift", 0)
    x = (op_coeff(ctx, t) * op_R(ctx, 3) + op_coeff(ctx, c) * op_I(ctx)
         + op_dphi(ctx) * op_R(ctx) * op_I(ctx))
    proj = x.project_identity()
    assert proj == op_coeff(ctx, t + c) + op_dphi(ctx)
    assert proj.project_identity() == proj
    # cancellation across group sectors
    y = op_coeff(ctx, t) * (op_one(ctx) - op_R(ctx, 2))
    assert y.project_identity() == op_zero(ctx)


# ---------------------------------------------------------------------------
# randomized ring/adjoint laws (the 200-case battery)
# ---------------------------------------------------------------------------


def _atom_pool(ctx):
    return [
        op_dr(ctx),
        op_dphi(ctx),
        op_R(ctx),
        op_I(ctx),
        op_r(ctx, -1),
        op_param(ctx, "a"),
        op_coeff(ctx, trig(ctx, "tan_shift", 0)),
        op_coeff(ctx, trig(ctx, "csc2_shift", 0)),
        op_scalar(ctx, ctx.imag_unit()),
        op_r(ctx, 2) * op_param(ctx, "w2"),
    ]


def _random_op(rng, ctx, pool):
    parts = []
    for _ in range(rng.randint(1, 2)):
        factors = [rng.choice(pool) for _ in range(rng.randint(1, 2))]
        term = factors[0]
        for f in factors[1:]:
            term = term * f
        if rng.random() < 0.3:
            term = rng.randint(-3, 3) * term
        parts.append(term)
    total = op_zero(ctx)
    for part in parts:
        total = total + part
    return total


def test_randomized_algebra_laws_200_cases():
    rng = random.Random(20260815)
    cases = 0
    for k in (1, 2, 3):
        ctx = ctx_new(k)
        pool = _atom_pool(ctx)
        for _ in range(67):
            x = _random_op(rng, ctx, pool)
            y = _random_op(rng, ctx, pool)
            z = _random_op(rng, ctx, pool)
            assert (x * y) * z == x * (y * z)
            assert x * (y + z) == x * y + x * z
            assert (y + z) * x == y * x + z * x
            assert (x * y).adjoint() == y.adjoint() * x.adjoint()
            assert x.adjoint().adjoint() == x
            cases += 1
    assert cases >= 200


@settings(max_examples=40, deadline=None)
@given(data=st.data(), k=st.sampled_from([1, 2]))
def test_linear_laws_hypothesis(data, k):
    ctx = ctx_new(k)
    pool = _atom_pool(ctx)
    pick = st.integers(0, len(pool) - 1)
    x = pool[data.draw(pick)] * pool[data.draw(pick)]
    y = pool[data.draw(pick)]
    n = data.draw(st.integers(-4, 4))
    assert x + y == y + x
    assert n * (x + y) == n * x + n * y
    assert -(-x) == x
    assert (x - y) + y == x


# ---------------------------------------------------------------------------
# products mean composition: cross-check against the numeric action
# ---------------------------------------------------------------------------


def test_product_matches_composition_numerically():
    import numpy as np

    from dunklops.oracle import (apply, random_sample_point,
                                 random_test_func)
    rng = np.random.default_rng(7)
    ctx = ctx_new(2)
    x = op_dphi(ctx) + op_coeff(ctx, trig(ctx, "tan_shift", 1)) * op_R(ctx)
    y = (op_dr(ctx) * op_I(ctx)
         + op_param(ctx, "a") * op_coeff(ctx, trig(ctx, "csc2_shift", 0)))
    prod = x * y
    f = random_test_func(rng, 2)
    via_product = apply(prod, f)
    via_steps = apply(x, apply(y, f))
    for _ in range(5):
        pt = random_sample_point(rng, 2)
        lhs = via_product.value(pt)
        rhs = via_steps.value(pt)
        assert abs(lhs - rhs) <= 1e-9 * max(1.0, abs(lhs), abs(rhs))
