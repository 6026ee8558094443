"""The verification suite: named checks with exact symbolic residuals.

Each check computes LHS - RHS of one structural identity in canonical form;
``status`` is "pass" exactly when the residual has no terms.  Checks whose
parity precondition excludes the given k report "skipped".  A check may have
several rows (one per j value, per relation, per explicit sub-identity);
every row becomes its own CheckReport with a ``base[row]`` id.

Alongside the exact residual, every row carries a numeric specification the
oracle module can evaluate on random test functions; the specification is
compositional (chains of operators applied in sequence) so the numeric
witness never relies on the symbolic product routine it is shadowing.

    >>> check("trig_sec2", 3).status
    'pass'
    >>> check("trig_tan_tan", 1).status       # empty j range at k=1
    'skipped'
    >>> check("dphi_squared", 3, mutation="b-shift").status
    'fail'
"""

from __future__ import annotations

import math
import time
from dataclasses import asdict, dataclass
from fnmatch import fnmatchcase
from functools import cached_property

from .builders import (MUTATIONS, build_counterterm, build_Dphi,
                       build_Dphi_squared_expanded, build_Dr,
                       build_extended_Hk, build_Hk, build_reflection_tail,
                       build_S, build_Xk, explicit_k2_counterterm,
                       explicit_k2_Dphi, explicit_k2_Dphi_squared,
                       explicit_k2_Dr, explicit_k3_counterterm,
                       explicit_k3_Dphi, explicit_k3_Dphi_squared,
                       explicit_k3_Dr)
from .coeffring import Coefficient, ZRat, cot_k, trig
from .cyclofield import FieldCtx, ctx_new
from .errors import AlgebraError
from .opalgebra import OpExpr, op_I, op_R, op_coeff, op_dphi, op_dr, op_one

__all__ = ["CheckReport", "CHECK_IDS", "DEFAULT_CHECK_IDS", "check",
           "run_check", "run_suite", "shadow_reports", "iter_rows",
           "applicable", "operator_set", "OperatorSet"]


@dataclass(frozen=True)
class CheckReport:
    check_id: str
    k: int
    status: str                 # "pass" | "fail" | "skipped"
    residual_term_count: int
    residual_sample: str
    elapsed_ms: int

    def to_dict(self) -> dict:
        return asdict(self)


# ---------------------------------------------------------------------------
# shared operator cache
# ---------------------------------------------------------------------------


class OperatorSet:
    """All operators a suite run needs for one (k, mutation), built lazily
    and shared across checks (the angular square is the expensive one)."""

    def __init__(self, ctx: FieldCtx, mutation: str | None = None):
        if mutation is not None and mutation not in MUTATIONS:
            raise AlgebraError(f"unknown mutation {mutation!r}")
        self.ctx = ctx
        self.mutation = mutation

    @cached_property
    def R(self) -> OpExpr:
        return op_R(self.ctx)

    @cached_property
    def I(self) -> OpExpr:
        return op_I(self.ctx)

    @cached_property
    def one(self) -> OpExpr:
        return op_one(self.ctx)

    @cached_property
    def inv_r(self) -> OpExpr:
        return op_coeff(self.ctx, Coefficient.monomial(self.ctx, m=-1))

    @cached_property
    def inv_r2(self) -> OpExpr:
        return op_coeff(self.ctx, Coefficient.monomial(self.ctx, m=-2))

    @cached_property
    def osc(self) -> OpExpr:
        return op_coeff(self.ctx, Coefficient.monomial(self.ctx, m=2, w2=1))

    @cached_property
    def Dr(self) -> OpExpr:
        return build_Dr(self.ctx, self.mutation)

    @cached_property
    def Dphi(self) -> OpExpr:
        return build_Dphi(self.ctx, self.mutation)

    @cached_property
    def Dphi2(self) -> OpExpr:
        return self.Dphi * self.Dphi

    @cached_property
    def tail(self) -> OpExpr:
        return build_reflection_tail(self.ctx)

    @cached_property
    def bracket(self) -> OpExpr:
        return self.one + 2 * self.tail

    @cached_property
    def counterterm(self) -> OpExpr:
        return build_counterterm(self.ctx)

    @cached_property
    def Hk(self) -> OpExpr:
        return build_Hk(self.ctx)

    @cached_property
    def Xk(self) -> OpExpr:
        return build_Xk(self.ctx)

    @cached_property
    def HkExtPhi(self) -> OpExpr:
        return build_extended_Hk(self.ctx, "via_Dphi", self.mutation,
                                 _dphi2=self.Dphi2)

    @cached_property
    def HkExtDr(self) -> OpExpr:
        return build_extended_Hk(self.ctx, "via_Dr", self.mutation,
                                 _dr=self.Dr, _dphi2=self.Dphi2)

    @cached_property
    def S(self) -> OpExpr:
        return build_S(self.ctx)

    @cached_property
    def proj_shift(self) -> OpExpr:
        """k^2 (a + b)^2 as a multiplication operator."""
        k2 = self.ctx.scalar(self.ctx.k ** 2)
        return op_coeff(self.ctx, Coefficient.make(self.ctx, {
            (0, 2, 0, 0): ZRat.const(self.ctx, 1) * k2,
            (0, 1, 1, 0): ZRat.const(self.ctx, 2) * k2,
            (0, 0, 2, 0): ZRat.const(self.ctx, 1) * k2,
        }))


_OPSETS: dict = {}


def operator_set(k: int, mutation: str | None = None) -> OperatorSet:
    key = (k, mutation)
    ops = _OPSETS.get(key)
    if ops is None:
        ops = OperatorSet(ctx_new(k), mutation)
        _OPSETS[key] = ops
    return ops


# ---------------------------------------------------------------------------
# rows
# ---------------------------------------------------------------------------
# A row is (row_id, residual_fn, numeric_fn):
#   residual_fn() -> OpExpr | ZRat              exact residual, zero iff pass
#   numeric_fn()  -> one of
#     ("ops", lhs, rhs)            lhs/rhs: list[(int, [OpExpr, ...])] chain sums
#     ("ops-invariant", lhs, rhs)  ditto, on group-invariant test functions
#     ("angle", f, g)              f/g: callable(phi: float) -> float


def _rows_group_relations(ops: OperatorSet):
    ctx, two_k = ops.ctx, 2 * ops.ctx.k
    R, I, one = ops.R, ops.I, ops.one
    r_inv = op_R(ctx, two_k - 1)
    return [
        ("[R-order]", lambda: R ** two_k - one,
         lambda: ("ops", [(1, [R] * two_k)], [(1, [])])),
        ("[I-square]", lambda: I * I - one,
         lambda: ("ops", [(1, [I, I])], [(1, [])])),
        ("[braid]", lambda: I * R - r_inv * I,
         lambda: ("ops", [(1, [I, R])], [(1, [r_inv, I])])),
        ("[R-dagger]", lambda: R.adjoint() - r_inv,
         lambda: ("ops", [(1, [R.adjoint()])], [(1, [r_inv])])),
        ("[I-dagger]", lambda: I.adjoint() - I,
         lambda: ("ops", [(1, [I.adjoint()])], [(1, [I])])),
    ]


def _rows_dr_props(ops: OperatorSet):
    return [
        ("[dagger]",
         lambda: ops.Dr.adjoint() + ops.Dr + ops.inv_r * ops.bracket,
         lambda: ("ops", [(1, [ops.Dr.adjoint()])],
                  [(-1, [ops.Dr]), (-1, [ops.inv_r, ops.bracket])])),
        ("[R-commute]", lambda: ops.R * ops.Dr - ops.Dr * ops.R,
         lambda: ("ops", [(1, [ops.R, ops.Dr]), (-1, [ops.Dr, ops.R])],
                  [])),
        ("[I-commute]", lambda: ops.I * ops.Dr - ops.Dr * ops.I,
         lambda: ("ops", [(1, [ops.I, ops.Dr]), (-1, [ops.Dr, ops.I])],
                  [])),
    ]


def _rows_dphi_props(ops: OperatorSet):
    return [
        ("[dagger]", lambda: ops.Dphi.adjoint() + ops.Dphi,
         lambda: ("ops", [(1, [ops.Dphi.adjoint()])], [(-1, [ops.Dphi])])),
        ("[R-commute]", lambda: ops.R * ops.Dphi - ops.Dphi * ops.R,
         lambda: ("ops", [(1, [ops.R, ops.Dphi]), (-1, [ops.Dphi, ops.R])],
                  [])),
        ("[I-anticommute]", lambda: ops.I * ops.Dphi + ops.Dphi * ops.I,
         lambda: ("ops", [(1, [ops.I, ops.Dphi]), (1, [ops.Dphi, ops.I])],
                  [])),
    ]


def _rows_dr_dphi_commutator(ops: OperatorSet):
    return [
        ("[main]",
         lambda: (ops.Dr * ops.Dphi - ops.Dphi * ops.Dr
                  + 2 * ops.inv_r * ops.tail * ops.Dphi),
         lambda: ("ops",
                  [(1, [ops.Dr, ops.Dphi]), (-1, [ops.Dphi, ops.Dr])],
                  [(-2, [ops.inv_r, ops.tail, ops.Dphi])])),
    ]


def _shifted(fn, k: int, i: int):
    return lambda phi: fn(phi + i * math.pi / k)


def _rows_trig_sec2(ops: OperatorSet):
    ctx, k = ops.ctx, ops.ctx.k

    def residual():
        total = ZRat.const(ctx, 0)
        for i in range(k):
            total = total + trig(ctx, "sec2_shift", i)
        return total - ctx.scalar(k * k) * trig(ctx, "sec2_k")

    def numeric():
        lhs = lambda phi: sum(1.0 / math.cos(phi + i * math.pi / k) ** 2
                              for i in range(k))
        rhs = lambda phi: k * k / math.cos(k * phi) ** 2
        return ("angle", lhs, rhs)

    return [("[sum]", residual, numeric)]


def _rows_trig_csc2(ops: OperatorSet):
    ctx, k = ops.ctx, ops.ctx.k

    def residual():
        total = ZRat.const(ctx, 0)
        for i in range(k):
            total = total + trig(ctx, "csc2_shift", i)
        return total - ctx.scalar(k * k) * trig(ctx, "csc2_k")

    def numeric():
        lhs = lambda phi: sum(1.0 / math.sin(phi + i * math.pi / k) ** 2
                              for i in range(k))
        rhs = lambda phi: k * k / math.sin(k * phi) ** 2
        return ("angle", lhs, rhs)

    return [("[sum]", residual, numeric)]


def _rows_trig_pair_family(ops: OperatorSet, first: str, second: str,
                           mixed: bool, target: int):
    """Rows for the shifted product sums: for each j in 1..k-1 the sum over i
    of products of shifted tan/cot at offsets i+j and i+2j is the constant
    ``target`` (times 1; the mixed family sums both orders)."""
    ctx, k = ops.ctx, ops.ctx.k
    rows = []
    for j in range(1, k):
        def residual(j=j):
            total = ZRat.const(ctx, 0)
            for i in range(k):
                u = trig(ctx, first, i + j)
                v = trig(ctx, second, i + 2 * j)
                total = total + u * v
                if mixed:
                    total = total + (trig(ctx, second, i + j)
                                     * trig(ctx, first, i + 2 * j))
            return total - ctx.scalar(target)

        def numeric(j=j):
            base = {"tan_shift": math.tan,
                    "cot_shift": lambda x: 1.0 / math.tan(x)}
            f, g = base[first], base[second]

            def lhs(phi):
                total = 0.0
                for i in range(k):
                    u = f(phi + (i + j) * math.pi / k)
                    v = g(phi + (i + 2 * j) * math.pi / k)
                    total += u * v
                    if mixed:
                        total += (g(phi + (i + j) * math.pi / k)
                                  * f(phi + (i + 2 * j) * math.pi / k))
                return total

            return ("angle", lhs, lambda phi: float(target))

        rows.append((f"[j={j}]", residual, numeric))
    return rows


def _rows_trig_half_angle(ops: OperatorSet):
    ctx, k = ops.ctx, ops.ctx.k

    def residual():
        return (trig(ctx, "half_diff_inv2") + trig(ctx, "half_sum_inv2")
                - ctx.scalar(2) * trig(ctx, "sec2_k"))

    def numeric():
        lhs = lambda phi: (1.0 / (1.0 - math.sin(k * phi))
                           + 1.0 / (1.0 + math.sin(k * phi)))
        rhs = lambda phi: 2.0 / math.cos(k * phi) ** 2
        return ("angle", lhs, rhs)

    return [("[sum]", residual, numeric)]


def _rows_trig_cot_sum(ops: OperatorSet):
    ctx, k = ops.ctx, ops.ctx.k

    def residual():
        total = ZRat.const(ctx, 0)
        for i in range(k):
            total = total + trig(ctx, "cot_shift", i)
        return total - ctx.scalar(k) * cot_k(ctx)

    def numeric():
        lhs = lambda phi: sum(1.0 / math.tan(phi + i * math.pi / k)
                              for i in range(k))
        rhs = lambda phi: k / math.tan(k * phi)
        return ("angle", lhs, rhs)

    return [("[sum]", residual, numeric)]


def _rows_dphi_squared(ops: OperatorSet):
    ctx = ops.ctx
    rows = [
        ("[main]",
         lambda: ops.Dphi2 - build_Dphi_squared_expanded(ctx),
         lambda: ("ops", [(1, [ops.Dphi, ops.Dphi])],
                  [(1, [build_Dphi_squared_expanded(ctx)])])),
    ]
    if ctx.k == 3:
        rows.append(
            ("[k3-explicit]",
             lambda: ops.Dphi2 - explicit_k3_Dphi_squared(),
             lambda: ("ops", [(1, [ops.Dphi, ops.Dphi])],
                      [(1, [explicit_k3_Dphi_squared()])])))
    return rows


def _rows_s_props(ops: OperatorSet):
    k = ops.ctx.k
    return [
        ("[R-commute]", lambda: ops.R * ops.S - ops.S * ops.R,
         lambda: ("ops", [(1, [ops.R, ops.S]), (-1, [ops.S, ops.R])], [])),
        ("[R4-fix]", lambda: op_R(ops.ctx, 4) * ops.S - ops.S,
         lambda: ("ops", [(1, [op_R(ops.ctx, 4), ops.S])], [(1, [ops.S])])),
        ("[idempotent]", lambda: 2 * (ops.S * ops.S) - k * ops.S,
         lambda: ("ops", [(2, [ops.S, ops.S])], [(k, [ops.S])])),
        ("[I-commute]", lambda: ops.I * ops.S - ops.S * ops.I,
         lambda: ("ops", [(1, [ops.I, ops.S]), (-1, [ops.S, ops.I])], [])),
        ("[dagger]", lambda: ops.S.adjoint() - ops.S,
         lambda: ("ops", [(1, [ops.S.adjoint()])], [(1, [ops.S])])),
    ]


def _rows_hk_two_forms(ops: OperatorSet):
    def numeric():
        dr_gen, dphi = op_dr(ops.ctx), ops.Dphi
        lhs = [(-1, [dr_gen, dr_gen]), (-1, [ops.inv_r, dr_gen]),
               (-1, [ops.inv_r2, dphi, dphi]),
               (1, [ops.inv_r2, ops.counterterm]), (1, [ops.osc])]
        rhs = [(-1, [ops.Dr, ops.Dr]), (-1, [ops.inv_r, ops.bracket, ops.Dr]),
               (-1, [ops.inv_r2, dphi, dphi]), (1, [ops.osc])]
        return ("ops", lhs, rhs)

    return [("[main]", lambda: ops.HkExtPhi - ops.HkExtDr, numeric)]


def _rows_hk_invariance(ops: OperatorSet):
    return [
        ("[R-commute]",
         lambda: ops.R * ops.HkExtPhi - ops.HkExtPhi * ops.R,
         lambda: ("ops", [(1, [ops.R, ops.HkExtPhi]),
                          (-1, [ops.HkExtPhi, ops.R])], [])),
        ("[I-commute]",
         lambda: ops.I * ops.HkExtPhi - ops.HkExtPhi * ops.I,
         lambda: ("ops", [(1, [ops.I, ops.HkExtPhi]),
                          (-1, [ops.HkExtPhi, ops.I])], [])),
    ]


def _rows_hk_projection(ops: OperatorSet):
    return [
        ("[main]",
         lambda: ops.HkExtPhi.project_identity() - ops.Hk,
         lambda: ("ops-invariant", [(1, [ops.HkExtPhi])], [(1, [ops.Hk])])),
    ]


def _rows_integral_commutes(ops: OperatorSet):
    return [
        ("[main]",
         lambda: ops.HkExtPhi * ops.Dphi2 - ops.Dphi2 * ops.HkExtPhi,
         lambda: ("ops",
                  [(1, [ops.HkExtPhi, ops.Dphi, ops.Dphi]),
                   (-1, [ops.Dphi, ops.Dphi, ops.HkExtPhi])], [])),
        ("[projected]",
         lambda: ops.Hk * ops.Xk - ops.Xk * ops.Hk,
         lambda: ("ops", [(1, [ops.Hk, ops.Xk]), (-1, [ops.Xk, ops.Hk])],
                  [])),
    ]


def _rows_integral_projection(ops: OperatorSet):
    return [
        ("[main]",
         lambda: ((-ops.Dphi2).project_identity()
                  - (ops.Xk - ops.proj_shift)),
         lambda: ("ops-invariant", [(-1, [ops.Dphi, ops.Dphi])],
                  [(1, [ops.Xk]), (-1, [ops.proj_shift])])),
    ]


def _rows_k3_specialization(ops: OperatorSet):
    pairs = [
        ("[Dr]", lambda: ops.Dr, explicit_k3_Dr),
        ("[Dphi]", lambda: ops.Dphi, explicit_k3_Dphi),
        ("[counterterm]", lambda: ops.counterterm, explicit_k3_counterterm),
    ]
    return [
        (rid,
         (lambda mine=mine, ref=ref: mine() - ref()),
         (lambda mine=mine, ref=ref:
          ("ops", [(1, [mine()])], [(1, [ref()])])))
        for rid, mine, ref in pairs
    ]


def _rows_k2_specialization(ops: OperatorSet):
    pairs = [
        ("[Dr]", lambda: ops.Dr, explicit_k2_Dr),
        ("[Dphi]", lambda: ops.Dphi, explicit_k2_Dphi),
        ("[Dphi-squared]", lambda: ops.Dphi2, explicit_k2_Dphi_squared),
        ("[counterterm]", lambda: ops.counterterm, explicit_k2_counterterm),
    ]
    return [
        (rid,
         (lambda mine=mine, ref=ref: mine() - ref()),
         (lambda mine=mine, ref=ref:
          ("ops", [(1, [mine()])], [(1, [ref()])])))
        for rid, mine, ref in pairs
    ]


def _rows_hk_selfadjoint(ops: OperatorSet):
    return [
        ("[main]", lambda: ops.HkExtPhi.adjoint() - ops.HkExtPhi,
         lambda: ("ops", [(1, [ops.HkExtPhi.adjoint()])],
                  [(1, [ops.HkExtPhi])])),
    ]


# ---------------------------------------------------------------------------
# registry
# ---------------------------------------------------------------------------

_ALWAYS = lambda k: True
_ODD = lambda k: k % 2 == 1
_EVEN = lambda k: k % 2 == 0

_REGISTRY: dict = {
    "group_relations": (_ALWAYS, _rows_group_relations),
    "dr_props": (_ALWAYS, _rows_dr_props),
    "dphi_props": (_ALWAYS, _rows_dphi_props),
    "dr_dphi_commutator": (_ALWAYS, _rows_dr_dphi_commutator),
    "trig_sec2": (_ODD, _rows_trig_sec2),
    "trig_csc2": (_ALWAYS, _rows_trig_csc2),
    "trig_tan_tan": (lambda k: k % 2 == 1 and k >= 3,
                     lambda ops: _rows_trig_pair_family(
                         ops, "tan_shift", "tan_shift", False, -ops.ctx.k)),
    "trig_cot_cot": (lambda k: k % 2 == 1 and k >= 3,
                     lambda ops: _rows_trig_pair_family(
                         ops, "cot_shift", "cot_shift", False, -ops.ctx.k)),
    "trig_mixed": (lambda k: k % 2 == 1 and k >= 3,
                   lambda ops: _rows_trig_pair_family(
                       ops, "tan_shift", "cot_shift", True, 2 * ops.ctx.k)),
    "trig_half_angle": (_EVEN, _rows_trig_half_angle),
    "trig_cot_sum": (_EVEN, _rows_trig_cot_sum),
    "dphi_squared": (_ALWAYS, _rows_dphi_squared),
    "s_props": (_EVEN, _rows_s_props),
    "hk_two_forms": (_ALWAYS, _rows_hk_two_forms),
    "hk_invariance": (_ALWAYS, _rows_hk_invariance),
    "hk_projection": (_ALWAYS, _rows_hk_projection),
    "integral_commutes": (_ALWAYS, _rows_integral_commutes),
    "integral_projection": (_ALWAYS, _rows_integral_projection),
    "k3_specialization": (lambda k: k == 3, _rows_k3_specialization),
    "k2_specialization": (lambda k: k == 2, _rows_k2_specialization),
    # Opt-in probe: self-adjointness of the extension is not asserted by the
    # source identities, so the default suite leaves it out; it is available
    # by name (and does hold).
    "hk_selfadjoint": (_ALWAYS, _rows_hk_selfadjoint),
}

CHECK_IDS = tuple(_REGISTRY)
DEFAULT_CHECK_IDS = tuple(cid for cid in _REGISTRY if cid != "hk_selfadjoint")


def applicable(check_id: str, k: int) -> bool:
    if check_id not in _REGISTRY:
        raise AlgebraError(f"unknown check {check_id!r}")
    return _REGISTRY[check_id][0](k)


def iter_rows(check_id: str, k: int, mutation: str | None = None):
    """The (row_id, residual_fn, numeric_fn) rows of one applicable check."""
    if not applicable(check_id, k):
        return []
    ops = operator_set(k, mutation)
    rows = _REGISTRY[check_id][1](ops)
    return [(check_id + rid, res, num) for rid, res, num in rows]


# ---------------------------------------------------------------------------
# running
# ---------------------------------------------------------------------------

_SAMPLE_LIMIT = 240


def _residual_report(row_id: str, k: int, value, elapsed_ms: int) -> CheckReport:
    if isinstance(value, ZRat):
        count = sum(1 for c in value.num if not c.is_zero())
    else:
        count = value.term_count()
    sample = ""
    if count:
        from .exprparse import pretty, pretty_zrat
        if isinstance(value, ZRat):
            sample = pretty_zrat(value)
        else:
            key, coeff = value.items()[0]
            sample = pretty(OpExpr(value.ctx, {key: coeff}))
        if len(sample) > _SAMPLE_LIMIT:
            sample = sample[:_SAMPLE_LIMIT] + "..."
    return CheckReport(
        check_id=row_id, k=k,
        status="pass" if count == 0 else "fail",
        residual_term_count=count, residual_sample=sample,
        elapsed_ms=elapsed_ms,
    )


def run_check(check_id: str, k: int, mutation: str | None = None) -> list:
    """All reports of one check at one k (one per row; one "skipped" row when
    the parity precondition excludes k)."""
    if not applicable(check_id, k):
        return [CheckReport(check_id, k, "skipped", 0, "", 0)]
    reports = []
    for row_id, residual_fn, _numeric_fn in iter_rows(check_id, k, mutation):
        start = time.perf_counter()
        value = residual_fn()
        elapsed = int((time.perf_counter() - start) * 1000)
        reports.append(_residual_report(row_id, k, value, elapsed))
    return reports


def check(check_id: str, k: int, mutation: str | None = None) -> CheckReport:
    """One aggregated report for a whole check (rows folded together)."""
    rows = run_check(check_id, k, mutation)
    if len(rows) == 1 and rows[0].check_id == check_id:
        return rows[0]
    count = sum(r.residual_term_count for r in rows)
    sample = next((r.residual_sample for r in rows if r.residual_sample), "")
    status = "fail" if any(r.status == "fail" for r in rows) else "pass"
    return CheckReport(check_id, k, status, count, sample,
                       sum(r.elapsed_ms for r in rows))


def _match(check_id: str, pattern: str | None) -> bool:
    if not pattern:
        return True
    return any(fnmatchcase(check_id, pat.strip())
               for pat in pattern.split(",") if pat.strip())


def _row_seed(row_id: str, k: int, seed: int) -> int:
    from zlib import crc32
    return crc32(f"{row_id}:{k}:{seed}".encode())


def shadow_reports(check_id: str, k: int, mutation: str | None = None,
                   trials: int = 100, tol: float = 1e-9,
                   seed: int | None = None) -> list:
    """Numeric-witness reports for one check: each row's specification is
    run through the oracle on ``trials`` random samples.  The report ids are
    prefixed "oracle:"; ``residual_term_count`` carries the number of trials
    whose relative deviation exceeded ``tol``."""
    from .oracle import DEFAULT_SEED, numeric_check_spec
    if seed is None:
        seed = DEFAULT_SEED
    reports = []
    for row_id, _residual_fn, numeric_fn in iter_rows(check_id, k, mutation):
        start = time.perf_counter()
        rep = numeric_check_spec(numeric_fn(), k, trials, tol,
                                 _row_seed(row_id, k, seed))
        elapsed = int((time.perf_counter() - start) * 1000)
        sample = ("" if rep.status == "pass"
                  else f"max rel dev {rep.max_rel_dev:.3e}")
        reports.append(CheckReport(
            check_id="oracle:" + row_id, k=k, status=rep.status,
            residual_term_count=rep.num_over_tol, residual_sample=sample,
            elapsed_ms=elapsed,
        ))
    return reports


def run_suite(k_list, suite_filter: str | None = None,
              mutation: str | None = None,
              include_optional: bool = False, oracle: bool = False,
              trials: int = 100, tol: float = 1e-9,
              seed: int | None = None) -> list:
    """Run every applicable check for every k; reports sorted by
    (k, check_id).  ``suite_filter`` is a comma list of glob patterns over
    base check ids ("trig_*,dphi_squared").  With ``oracle`` each row is
    additionally run through the numeric witness; the shadow reports follow
    the symbolic block of the same k."""
    base_ids = CHECK_IDS if include_optional else DEFAULT_CHECK_IDS
    selected = [cid for cid in base_ids if _match(cid, suite_filter)]
    reports = []
    for k in sorted(set(k_list)):
        k_reports = []
        for cid in selected:
            k_reports.extend(run_check(cid, k, mutation))
        k_reports.sort(key=lambda r: r.check_id)
        reports.extend(k_reports)
        if oracle:
            o_reports = []
            for cid in selected:
                o_reports.extend(shadow_reports(cid, k, mutation,
                                                trials, tol, seed))
            o_reports.sort(key=lambda r: r.check_id)
            reports.extend(o_reports)
    return reports
