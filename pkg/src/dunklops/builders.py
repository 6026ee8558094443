"""Constructors for the dihedral Dunkl operators and the Hamiltonians.

Every operator the verification suite talks about is built here, for any
1 <= k <= max_k, with the odd/even branching in the angular operator:

    build_Dr      radial operator  dr - (1/r)(a R + b)(sum_i R^{2i}) I
    build_Dphi    angular operator; odd k uses shifted tan/cot multipliers,
                  even k uses tan/sec of k*phi spread over S = sum_i R^{4i}
    build_Hk      the scalar Hamiltonian with sec^2/csc^2 potential
    build_Xk      its angular part (the separation constant operator)
    build_extended_Hk   the group-invariant extension, in either of its two
                  equivalent forms ("via_Dphi" / "via_Dr")

``explicit_k3_*`` and ``explicit_k2_*`` are the same operators written out
summand by summand for those two k values, used to cross-check the general
constructors term-for-term.

Builders accept either a FieldCtx or a bare integer k.  Two documented
single-coefficient mutations are available for fail-path testing of the
verification suite; they must never be used for anything else:

    "b-shift"  the i = 0 cotangent multiplier -b becomes -(b+1) in build_Dphi
    "dr-drop"  build_Dr loses its i = k-1 rotation summand
"""

from __future__ import annotations

from .coeffring import Coefficient, ZRat, trig
from .cyclofield import FieldCtx, ctx_new
from .errors import AlgebraError
from .opalgebra import (OpExpr, op_I, op_R, op_coeff, op_dphi, op_dr, op_one,
                        op_zero)

__all__ = [
    "build_R", "build_I", "build_S", "build_Dr", "build_Dphi",
    "build_Hk", "build_Xk", "build_extended_Hk", "build_counterterm",
    "build_reflection_tail", "build_Dphi_squared_expanded",
    "explicit_k3_Dr", "explicit_k3_Dphi", "explicit_k3_Dphi_squared",
    "explicit_k3_counterterm", "explicit_k2_Dr", "explicit_k2_Dphi",
    "explicit_k2_Dphi_squared", "explicit_k2_counterterm",
    "OPERATORS", "MUTATIONS", "Mutation",
]


def _as_ctx(k) -> FieldCtx:
    if isinstance(k, FieldCtx):
        return k
    return ctx_new(k)


def _check_mutation(mutation) -> None:
    if mutation is not None and mutation not in MUTATIONS:
        raise AlgebraError(f"unknown mutation {mutation!r}")


# -- group elements -----------------------------------------------------------


def build_R(k, n: int = 1) -> OpExpr:
    return op_R(_as_ctx(k), n)


def build_I(k) -> OpExpr:
    return op_I(_as_ctx(k))


def build_S(k) -> OpExpr:
    """S = sum_{i=0}^{(k-2)/2} R^{4i}; defined for even k only."""
    ctx = _as_ctx(k)
    if ctx.k % 2:
        raise AlgebraError(f"S requires even k, got k={ctx.k}")
    total = op_zero(ctx)
    for i in range((ctx.k - 2) // 2 + 1):
        total = total + op_R(ctx, 4 * i)
    return total


# -- Dunkl operators ------------------------------------------------------------


def build_reflection_tail(k) -> OpExpr:
    """(a R + b)(sum_{i<k} R^{2i}) I — the group-algebra tail of the radial
    operator, also appearing in its adjoint and in the mixed commutator."""
    ctx = _as_ctx(k)
    terms: dict = {}
    a_c = Coefficient.monomial(ctx, a=1)
    b_c = Coefficient.monomial(ctx, b=1)
    for i in range(ctx.k):
        terms[(0, 0, (2 * i + 1) % (2 * ctx.k), 1)] = a_c
        terms[(0, 0, 2 * i, 1)] = b_c
    return OpExpr(ctx, terms)


def build_Dr(k, mutation: str | None = None) -> OpExpr:
    ctx = _as_ctx(k)
    _check_mutation(mutation)
    upper = ctx.k - 1 if mutation == "dr-drop" else ctx.k
    terms: dict = {(1, 0, 0, 0): Coefficient.one(ctx)}
    a_c = Coefficient.monomial(ctx, m=-1, a=1)
    b_c = Coefficient.monomial(ctx, m=-1, b=1)
    for i in range(upper):
        terms[(0, 0, (2 * i + 1) % (2 * ctx.k), 1)] = -a_c
        terms[(0, 0, 2 * i, 1)] = -b_c
    return OpExpr(ctx, terms)


def build_Dphi(k, mutation: str | None = None) -> OpExpr:
    ctx = _as_ctx(k)
    _check_mutation(mutation)
    kk, two_k = ctx.k, 2 * ctx.k
    a_c = Coefficient.monomial(ctx, a=1)
    terms: dict = {(0, 1, 0, 0): Coefficient.one(ctx)}

    def add(key, coeff):
        cur = terms.get(key)
        terms[key] = coeff if cur is None else cur + coeff

    if kk % 2:
        for i in range(kk):
            add((0, 0, (kk + 2 * i) % two_k, 1),
                a_c * trig(ctx, "tan_shift", i))
    else:
        plus = a_c * (trig(ctx, "tan_k") + trig(ctx, "sec_k"))
        minus = a_c * (trig(ctx, "tan_k") - trig(ctx, "sec_k"))
        for i in range((kk - 2) // 2 + 1):
            add((0, 0, (two_k - 1 + 4 * i) % two_k, 1), plus)
            add((0, 0, (1 + 4 * i) % two_k, 1), minus)
    for i in range(kk):
        b_c = Coefficient.monomial(ctx, b=1)
        if i == 0 and mutation == "b-shift":
            b_c = b_c + Coefficient.one(ctx)
        add((0, 0, 2 * i, 1), -(b_c * trig(ctx, "cot_shift", i)))
    return OpExpr.make(ctx, terms)


# -- Hamiltonians ------------------------------------------------------------------


def _potential(ctx: FieldCtx) -> Coefficient:
    """k^2 [a(a-1) sec^2(k phi) + b(b-1) csc^2(k phi)] as a Coefficient."""
    k2 = ctx.scalar(ctx.k * ctx.k)
    sec2 = k2 * trig(ctx, "sec2_k")
    csc2 = k2 * trig(ctx, "csc2_k")
    return Coefficient.make(ctx, {
        (0, 2, 0, 0): sec2, (0, 1, 0, 0): -sec2,
        (0, 0, 2, 0): csc2, (0, 0, 1, 0): -csc2,
    })


def build_Hk(k) -> OpExpr:
    ctx = _as_ctx(k)
    pot = Coefficient.monomial(ctx, m=-2) * _potential(ctx)
    osc = Coefficient.monomial(ctx, m=2, w2=1)
    return OpExpr.make(ctx, {
        (2, 0, 0, 0): -Coefficient.one(ctx),
        (1, 0, 0, 0): -Coefficient.monomial(ctx, m=-1),
        (0, 2, 0, 0): -Coefficient.monomial(ctx, m=-2),
        (0, 0, 0, 0): pot + osc,
    })


def build_Xk(k) -> OpExpr:
    ctx = _as_ctx(k)
    return OpExpr.make(ctx, {
        (0, 2, 0, 0): -Coefficient.one(ctx),
        (0, 0, 0, 0): _potential(ctx),
    })


def build_counterterm(k) -> OpExpr:
    """k (a^2 + b^2 + 2ab R) sum_{i<k} R^{2i}, the group-algebra constant
    relating the angular square to the invariant Hamiltonian."""
    ctx = _as_ctx(k)
    kk = ctx.k
    sq = Coefficient.make(ctx, {
        (0, 2, 0, 0): ZRat.const(ctx, kk),
        (0, 0, 2, 0): ZRat.const(ctx, kk),
    })
    cross = Coefficient.monomial(ctx, ZRat.const(ctx, 2 * kk), a=1, b=1)
    terms: dict = {}
    for i in range(kk):
        terms[(0, 0, 2 * i, 0)] = sq
        terms[(0, 0, (2 * i + 1) % (2 * kk), 0)] = cross
    return OpExpr(ctx, terms)


def build_Dphi_squared_expanded(k) -> OpExpr:
    """The angular square written with shifted multipliers and group terms
    (no operator products; this is the hand-expanded closed form)."""
    ctx = _as_ctx(k)
    kk, two_k = ctx.k, 2 * ctx.k
    total = OpExpr.make(ctx, {(0, 2, 0, 0): Coefficient.one(ctx)})
    a2 = Coefficient.monomial(ctx, a=2)
    ab1 = Coefficient.monomial(ctx, a=1)
    b2 = Coefficient.monomial(ctx, b=2)
    bb1 = Coefficient.monomial(ctx, b=1)
    if kk % 2:
        for i in range(kk):
            s2 = trig(ctx, "sec2_shift", i)
            total = total - OpExpr.make(ctx, {
                (0, 0, 0, 0): a2 * s2,
                (0, 0, (kk + 2 * i) % two_k, 1): -(ab1 * s2),
            })
    else:
        hd = trig(ctx, "half_diff_inv2")
        hs = trig(ctx, "half_sum_inv2")
        kc = ctx.scalar(kk)
        for i in range((kk - 2) // 2 + 1):
            total = total - OpExpr.make(ctx, {
                (0, 0, 4 * i, 0): a2 * (kc * (hd + hs)),
                (0, 0, (two_k - 1 + 4 * i) % two_k, 1): -(ab1 * (kc * hd)),
                (0, 0, (1 + 4 * i) % two_k, 1): -(ab1 * (kc * hs)),
            })
    for i in range(kk):
        c2 = trig(ctx, "csc2_shift", i)
        total = total - OpExpr.make(ctx, {
            (0, 0, 0, 0): b2 * c2,
            (0, 0, 2 * i, 1): -(bb1 * c2),
        })
    return total + build_counterterm(ctx)


def build_extended_Hk(k, form: str = "via_Dphi", mutation: str | None = None,
                      _dr: OpExpr | None = None,
                      _dphi2: OpExpr | None = None) -> OpExpr:
    """The invariant extension, assembled from either defining expression.

    ``_dr``/``_dphi2`` let callers reuse already-built ingredients (the suite
    shares one angular square across several checks); when absent they are
    built fresh.
    """
    ctx = _as_ctx(k)
    _check_mutation(mutation)
    if form not in ("via_Dphi", "via_Dr"):
        raise AlgebraError(f"unknown form {form!r}")
    if _dphi2 is None:
        dphi = build_Dphi(ctx, mutation)
        _dphi2 = dphi * dphi
    osc = op_coeff(ctx, Coefficient.monomial(ctx, m=2, w2=1))
    if form == "via_Dphi":
        radial = OpExpr.make(ctx, {
            (2, 0, 0, 0): -Coefficient.one(ctx),
            (1, 0, 0, 0): -Coefficient.monomial(ctx, m=-1),
        })
        inv_r2 = op_coeff(ctx, Coefficient.monomial(ctx, m=-2))
        return radial - inv_r2 * (_dphi2 - build_counterterm(ctx)) + osc
    if _dr is None:
        _dr = build_Dr(ctx, mutation)
    inv_r = op_coeff(ctx, Coefficient.monomial(ctx, m=-1))
    bracket = op_one(ctx) + 2 * build_reflection_tail(ctx)
    inv_r2 = op_coeff(ctx, Coefficient.monomial(ctx, m=-2))
    return -(_dr * _dr) - inv_r * (bracket * _dr) - inv_r2 * _dphi2 + osc


# -- explicit low-k transcriptions ------------------------------------------------
# The k=3 and k=2 operators written out summand by summand, used to check the
# general constructors against the concrete low-order forms.


def explicit_k3_Dr() -> OpExpr:
    ctx = ctx_new(3)
    dr = op_dr(ctx)
    inv_r = op_coeff(ctx, Coefficient.monomial(ctx, m=-1))
    a = op_coeff(ctx, Coefficient.monomial(ctx, a=1))
    b = op_coeff(ctx, Coefficient.monomial(ctx, b=1))
    group = (a * op_R(ctx) + b) * (op_one(ctx) + op_R(ctx, 2) + op_R(ctx, 4))
    return dr - inv_r * group * op_I(ctx)


def explicit_k3_Dphi() -> OpExpr:
    ctx = ctx_new(3)
    a = op_coeff(ctx, Coefficient.monomial(ctx, a=1))
    b = op_coeff(ctx, Coefficient.monomial(ctx, b=1))
    t = [op_coeff(ctx, trig(ctx, "tan_shift", j)) for j in range(3)]
    c = [op_coeff(ctx, trig(ctx, "cot_shift", j)) for j in range(3)]
    tan_part = t[0] * op_R(ctx, 3) + t[1] * op_R(ctx, 5) + t[2] * op_R(ctx, 1)
    cot_part = c[0] + c[1] * op_R(ctx, 2) + c[2] * op_R(ctx, 4)
    return (op_dphi(ctx) + a * tan_part * op_I(ctx)
            - b * cot_part * op_I(ctx))


def explicit_k3_counterterm() -> OpExpr:
    ctx = ctx_new(3)
    a = op_coeff(ctx, Coefficient.monomial(ctx, a=1))
    b = op_coeff(ctx, Coefficient.monomial(ctx, b=1))
    quad = a * a + b * b + 2 * a * b * op_R(ctx)
    return 3 * quad * (op_one(ctx) + op_R(ctx, 2) + op_R(ctx, 4))


def explicit_k3_Dphi_squared() -> OpExpr:
    ctx = ctx_new(3)
    a = op_coeff(ctx, Coefficient.monomial(ctx, a=1))
    b = op_coeff(ctx, Coefficient.monomial(ctx, b=1))
    total = op_dphi(ctx) * op_dphi(ctx)
    tan_groups = [op_R(ctx, 3), op_R(ctx, 5), op_R(ctx, 1)]
    for j in range(3):
        s2 = op_coeff(ctx, trig(ctx, "sec2_shift", j))
        total = total - s2 * a * (a - tan_groups[j] * op_I(ctx))
    cot_groups = [op_one(ctx), op_R(ctx, 2), op_R(ctx, 4)]
    for j in range(3):
        c2 = op_coeff(ctx, trig(ctx, "csc2_shift", j))
        total = total - c2 * b * (b - cot_groups[j] * op_I(ctx))
    return total + explicit_k3_counterterm()


def explicit_k2_Dr() -> OpExpr:
    ctx = ctx_new(2)
    inv_r = op_coeff(ctx, Coefficient.monomial(ctx, m=-1))
    a = op_coeff(ctx, Coefficient.monomial(ctx, a=1))
    b = op_coeff(ctx, Coefficient.monomial(ctx, b=1))
    group = (a * op_R(ctx) + b) * (op_one(ctx) + op_R(ctx, 2))
    return op_dr(ctx) - inv_r * group * op_I(ctx)


def explicit_k2_Dphi() -> OpExpr:
    ctx = ctx_new(2)
    a = op_coeff(ctx, Coefficient.monomial(ctx, a=1))
    b = op_coeff(ctx, Coefficient.monomial(ctx, b=1))
    tank = op_coeff(ctx, trig(ctx, "tan_k"))
    seck = op_coeff(ctx, trig(ctx, "sec_k"))
    tan0 = op_coeff(ctx, trig(ctx, "tan_shift", 0))
    cot0 = op_coeff(ctx, trig(ctx, "cot_shift", 0))
    a_part = ((tank + seck) * op_R(ctx, 2) + tank - seck) * op_R(ctx, 1)
    b_part = tan0 * op_R(ctx, 2) - cot0
    return (op_dphi(ctx) + a * a_part * op_I(ctx) + b * b_part * op_I(ctx))


def explicit_k2_counterterm() -> OpExpr:
    ctx = ctx_new(2)
    a = op_coeff(ctx, Coefficient.monomial(ctx, a=1))
    b = op_coeff(ctx, Coefficient.monomial(ctx, b=1))
    quad = a * a + b * b + 2 * a * b * op_R(ctx)
    return 2 * quad * (op_one(ctx) + op_R(ctx, 2))


def explicit_k2_Dphi_squared() -> OpExpr:
    ctx = ctx_new(2)
    a = op_coeff(ctx, Coefficient.monomial(ctx, a=1))
    b = op_coeff(ctx, Coefficient.monomial(ctx, b=1))
    hd = op_coeff(ctx, trig(ctx, "half_diff_inv2"))
    hs = op_coeff(ctx, trig(ctx, "half_sum_inv2"))
    sec2_phi = op_coeff(ctx, trig(ctx, "csc2_shift", 1))  # 1/cos^2(phi)
    csc2_phi = op_coeff(ctx, trig(ctx, "csc2_shift", 0))
    total = op_dphi(ctx) * op_dphi(ctx)
    total = total - 2 * (hd * a * (a - op_R(ctx, 3) * op_I(ctx))
                         + hs * a * (a - op_R(ctx, 1) * op_I(ctx)))
    total = total - (sec2_phi * b * (b - op_R(ctx, 2) * op_I(ctx))
                     + csc2_phi * b * (b - op_I(ctx)))
    return total + explicit_k2_counterterm()


# -- registries ---------------------------------------------------------------------


OPERATORS = {
    "R": lambda ctx: build_R(ctx),
    "I": build_I,
    "S": build_S,
    "Dr": build_Dr,
    "Dphi": build_Dphi,
    "Hk": build_Hk,
    "Xk": build_Xk,
    "HkExt": lambda ctx: build_extended_Hk(ctx, "via_Dphi"),
    "HkExtViaDr": lambda ctx: build_extended_Hk(ctx, "via_Dr"),
}


class Mutation:
    """A documented single-coefficient defect for fail-path testing."""

    __slots__ = ("name", "description", "targets")

    def __init__(self, name: str, description: str, targets: tuple):
        self.name = name
        self.description = description
        self.targets = targets


MUTATIONS = {
    "b-shift": Mutation(
        "b-shift",
        "replace the i=0 cotangent multiplier -b by -(b+1) in build_Dphi",
        ("dphi_squared", "dphi_props"),
    ),
    "dr-drop": Mutation(
        "dr-drop",
        "drop the i=k-1 rotation summand from build_Dr",
        ("dr_props", "dr_dphi_commutator"),
    ),
}
