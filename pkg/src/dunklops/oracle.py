"""Independent numeric witness for operator identities.

The engine applies operators analytically to the closed family

    f(r, phi) = r^s * exp(c r^2) * P(z),      z = e^{i phi},

where P is a Laurent polynomial with complex coefficients.  Every generator
maps a weighted sum of such functions to another one: d/dr raises or lowers
s and mixes in the Gaussian exponent, d/dphi acts as i z d/dz on P, the
rotation scales z by e^{i pi / k}, the reflection inverts z, and a
coefficient multiplies the weight.  The weight of a term is a rational
function of z times a monomial in the parameters a, b, w2; it is evaluated
numerically only at the very end.  No normal ordering or operator product
is ever performed here, so agreement with the symbolic engine is a genuine
second witness.

Two layers share the same calculus rules:

- ``TestFunc`` / ``TestFuncSum`` / ``apply``: a readable scalar
  implementation, one function and one sample point at a time.
- ``numeric_check`` / ``numeric_check_spec``: a batched engine evaluating
  all trials as numpy columns; this is what the verification suite's
  numeric shadow uses.

>>> ctx = ctx_new(3)
>>> f = TestFunc(s=1, c=RAT(-1, 2), P={2: 1.0 + 0j})
>>> g = apply(op_dphi(ctx), f)                      # i z d/dz doubles ... x2i
>>> pt = SamplePoint(r=1.3, phi=0.21, a_val=0.7, b_val=1.1, w2_val=2.0)
>>> abs(g.value(pt) - 2j * f_value(f, pt)) < 1e-12
True
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field

import numpy as np

from ._rat import RAT
from .coeffring import Coefficient, ZRat
from .cyclofield import FieldCtx, ctx_new
from .errors import OracleError
from .opalgebra import OpExpr, op_dphi

__all__ = [
    "TestFunc", "TestFuncSum", "SamplePoint", "OracleReport",
    "apply", "f_value", "numeric_check", "numeric_check_spec",
    "random_test_func", "random_sample_point", "DEFAULT_SEED",
]

DEFAULT_SEED = 20260815
_DEGENERATE = 1e-6
_MARGIN = 0.05
_MAX_ROUNDS = 50


# ---------------------------------------------------------------------------
# public scalar layer
# ---------------------------------------------------------------------------


@dataclass
class TestFunc:
    """One member of the closed family: r^s * exp(c r^2) * P(z)."""

    __test__ = False                # not a pytest item, despite the name

    s: int
    c: object                       # rational (or float) Gaussian exponent
    P: dict = field(default_factory=dict)   # j -> complex coefficient of z^j


@dataclass(frozen=True)
class SamplePoint:
    r: float
    phi: float
    a_val: float
    b_val: float
    w2_val: float


def f_value(f: TestFunc, pt: SamplePoint) -> complex:
    z = complex(math.cos(pt.phi), math.sin(pt.phi))
    poly = sum(coeff * z ** j for j, coeff in f.P.items())
    return pt.r ** f.s * math.exp(float(f.c) * pt.r ** 2) * poly


class TestFuncSum:
    """A finite weighted sum of TestFunc.

    Each term carries a weight that is a rational function of z times a
    monomial a^alpha * b^beta * w2^gamma; weights stay symbolic until
    ``value`` is called.
    """

    __test__ = False                # not a pytest item, despite the name

    __slots__ = ("ctx", "terms")

    def __init__(self, ctx: FieldCtx, terms: list):
        # terms: list of (w: ZRat, (alpha, beta, gamma), TestFunc)
        self.ctx = ctx
        self.terms = terms

    @staticmethod
    def lift(ctx: FieldCtx, f: TestFunc) -> "TestFuncSum":
        return TestFuncSum(ctx, [(ZRat.const(ctx, 1), (0, 0, 0), f)])

    def value(self, pt: SamplePoint) -> complex:
        z = complex(math.cos(pt.phi), math.sin(pt.phi))
        total = 0j
        for w, (al, be, ga), f in self.terms:
            weight = (w.eval(z) * pt.a_val ** al * pt.b_val ** be
                      * pt.w2_val ** ga)
            total += weight * f_value(f, pt)
        return total

    def _merged(self) -> "TestFuncSum":
        by_key: dict = {}
        for w, pexp, f in self.terms:
            key = (w, pexp, f.s, f.c)
            tgt = by_key.setdefault(key, {})
            for j, coeff in f.P.items():
                tgt[j] = tgt.get(j, 0j) + coeff
        terms = [(w, pexp, TestFunc(s, c, {j: v for j, v in P.items() if v}))
                 for (w, pexp, s, c), P in by_key.items()]
        return TestFuncSum(self.ctx, [t for t in terms if t[2].P])

    def __repr__(self) -> str:  # pragma: no cover - cosmetic
        return f"TestFuncSum({len(self.terms)} terms)"


def _scalar_reflect(ctx, terms):
    return [(w.reflect(), pexp, TestFunc(f.s, f.c,
                                         {-j: v for j, v in f.P.items()}))
            for w, pexp, f in terms]


def _scalar_rotate(ctx, terms, n):
    out = []
    for w, pexp, f in terms:
        P = {j: v * complex(math.cos(math.pi * n * j / ctx.k),
                            math.sin(math.pi * n * j / ctx.k))
             for j, v in f.P.items()}
        out.append((w.rotate_n(n), pexp, TestFunc(f.s, f.c, P)))
    return out


def _scalar_dphi(ctx, terms):
    out = []
    for w, pexp, f in terms:
        wp = w.d_phi()
        if not wp.is_zero():
            out.append((wp, pexp, f))
        P = {j: 1j * j * v for j, v in f.P.items() if j}
        if P:
            out.append((w, pexp, TestFunc(f.s, f.c, P)))
    return out


def _scalar_dr(ctx, terms):
    out = []
    for w, pexp, f in terms:
        if f.s:
            out.append((w, pexp,
                        TestFunc(f.s - 1, f.c,
                                 {j: f.s * v for j, v in f.P.items()})))
        two_c = 2 * float(f.c)
        out.append((w, pexp,
                    TestFunc(f.s + 1, f.c,
                             {j: two_c * v for j, v in f.P.items()})))
    return out


def apply(op: OpExpr, f) -> TestFuncSum:
    """Apply a normal-ordered operator to a TestFunc (or sum) analytically."""
    ctx = op.ctx
    if isinstance(f, TestFunc):
        f = TestFuncSum.lift(ctx, f)
    result: list = []
    for (p, q, i, e), coeff in op.items():
        terms = f.terms
        if e:
            terms = _scalar_reflect(ctx, terms)
        if i:
            terms = _scalar_rotate(ctx, terms, i)
        for _ in range(q):
            terms = _scalar_dphi(ctx, terms)
        for _ in range(p):
            terms = _scalar_dr(ctx, terms)
        for (m, al, be, ga), u in coeff.items():
            for w, (a0, b0, g0), g in terms:
                wu = w * u
                if wu.is_zero():
                    continue
                result.append((wu, (a0 + al, b0 + be, g0 + ga),
                               TestFunc(g.s + m, g.c, dict(g.P))))
    return TestFuncSum(ctx, result)._merged()


# ---------------------------------------------------------------------------
# random draws
# ---------------------------------------------------------------------------

_GENERIC_SLOTS = tuple(range(-3, 4))


def random_test_func(rng, k: int, invariant: bool = False) -> TestFunc:
    """One random family member; ``invariant`` restricts P to the monomials
    fixed by the whole group (z^0 and z^{2k} + z^{-2k})."""
    s = int(rng.integers(0, 4))
    c = -float(rng.uniform(0.3, 1.2))
    if invariant:
        p0 = complex(*rng.uniform(-1, 1, 2))
        p1 = complex(*rng.uniform(-1, 1, 2))
        P = {0: p0, 2 * k: p1, -2 * k: p1}
    else:
        P = {j: complex(*rng.uniform(-1, 1, 2)) for j in _GENERIC_SLOTS}
    return TestFunc(s, c, P)


def random_sample_point(rng, k: int, margin: float = _MARGIN) -> SamplePoint:
    """A sample point in the fundamental wedge with |sin k phi| and
    |cos k phi| at least ``margin``."""
    for _ in range(1000):
        phi = float(rng.uniform(0.0, math.pi / (2 * k)))
        if (abs(math.sin(k * phi)) >= margin
                and abs(math.cos(k * phi)) >= margin):
            break
    else:  # pragma: no cover - margin < 1 always leaves room
        raise OracleError("could not draw a sample angle inside the margin")
    return SamplePoint(
        r=float(rng.uniform(0.6, 2.5)),
        phi=phi,
        a_val=float(rng.uniform(0.5, 3.0)),
        b_val=float(rng.uniform(0.5, 3.0)),
        w2_val=float(rng.uniform(0.5, 3.0)),
    )


# ---------------------------------------------------------------------------
# batched engine
# ---------------------------------------------------------------------------


class _Batch:
    """One column per trial: the test function data (s, c, P), the sample
    point (r, phi, a, b, w2) and derived caches."""

    __slots__ = ("T", "s", "c", "P", "r", "phi", "z", "a", "b", "w2",
                 "_zpow", "_ppow", "_wval", "_gauss")

    def __init__(self, rng, T: int, k: int, invariant: bool):
        self.T = T
        self.s = rng.integers(0, 4, T)
        self.c = -rng.uniform(0.3, 1.2, T)
        if invariant:
            p0 = rng.uniform(-1, 1, T) + 1j * rng.uniform(-1, 1, T)
            p1 = rng.uniform(-1, 1, T) + 1j * rng.uniform(-1, 1, T)
            self.P = {0: p0, 2 * k: p1, -2 * k: p1.copy()}
        else:
            self.P = {j: rng.uniform(-1, 1, T) + 1j * rng.uniform(-1, 1, T)
                      for j in _GENERIC_SLOTS}
        self.phi = rng.uniform(0.0, math.pi / (2 * k), T)
        for _ in range(_MAX_ROUNDS):
            bad = ((np.abs(np.sin(k * self.phi)) < _MARGIN)
                   | (np.abs(np.cos(k * self.phi)) < _MARGIN))
            n_bad = int(bad.sum())
            if not n_bad:
                break
            self.phi[bad] = rng.uniform(0.0, math.pi / (2 * k), n_bad)
        else:  # pragma: no cover - acceptance ratio is ~0.94 per draw
            raise OracleError("could not draw sample angles inside the margin")
        self.r = rng.uniform(0.6, 2.5, T)
        self.a = rng.uniform(0.5, 3.0, T)
        self.b = rng.uniform(0.5, 3.0, T)
        self.w2 = rng.uniform(0.5, 3.0, T)
        self._refresh()

    def _refresh(self):
        self.z = np.exp(1j * self.phi)
        self._zpow = {0: np.ones(self.T, complex), 1: self.z}
        self._ppow = {}
        self._wval = {}
        self._gauss = np.exp(self.c * self.r ** 2)

    def splice(self, idx, other: "_Batch"):
        """Replace the columns ``idx`` with the columns of ``other``."""
        self.s[idx] = other.s
        self.c[idx] = other.c
        for j in self.P:
            self.P[j][idx] = other.P[j]
        for name in ("r", "phi", "a", "b", "w2"):
            getattr(self, name)[idx] = getattr(other, name)
        self._refresh()

    def zpow(self, j: int):
        arr = self._zpow.get(j)
        if arr is None:
            arr = self.z ** j
            self._zpow[j] = arr
        return arr

    def ppow(self, al: int, be: int, ga: int):
        if al == be == ga == 0:
            return None
        key = (al, be, ga)
        arr = self._ppow.get(key)
        if arr is None:
            arr = self.a ** al * self.b ** be * self.w2 ** ga
            self._ppow[key] = arr
        return arr

    def wval(self, w: ZRat):
        arr = self._wval.get(w)
        if arr is None:
            arr = w.eval(self.z)
            self._wval[w] = arr
        return arr


def _cached_zr(ctx, key, thunk) -> ZRat:
    cache = ctx.oracle_cache
    val = cache.get(key)
    if val is None:
        val = thunk()
        cache[key] = val
    return val


def _merge(out: dict, key, P: dict):
    tgt = out.get(key)
    if tgt is None:
        out[key] = dict(P)
        return
    for j, arr in P.items():
        cur = tgt.get(j)
        tgt[j] = arr if cur is None else cur + arr


def _refl_state(ctx, state):
    out: dict = {}
    for (w, d), P in state.items():
        wr = _cached_zr(ctx, ("refl", w), w.reflect)
        _merge(out, (wr, d), {-j: arr for j, arr in P.items()})
    return out


def _rot_state(ctx, state, n: int):
    out: dict = {}
    k = ctx.k
    for (w, d), P in state.items():
        wr = _cached_zr(ctx, ("rot", n, w), lambda w=w: w.rotate_n(n))
        phase = {j: complex(math.cos(math.pi * n * j / k),
                            math.sin(math.pi * n * j / k))
                 for j in P}
        _merge(out, (wr, d), {j: arr * phase[j] for j, arr in P.items()})
    return out


def _dphi_state(ctx, state):
    out: dict = {}
    for (w, d), P in state.items():
        wp = _cached_zr(ctx, ("dphi", w), w.d_phi)
        if not wp.is_zero():
            _merge(out, (wp, d), P)
        dP = {j: (1j * j) * arr for j, arr in P.items() if j}
        if dP:
            _merge(out, (w, d), dP)
    return out


def _dr_state(ctx, state, batch: _Batch):
    out: dict = {}
    two_c = 2.0 * batch.c
    for (w, d), P in state.items():
        s_eff = batch.s + d
        _merge(out, (w, d - 1), {j: s_eff * arr for j, arr in P.items()})
        _merge(out, (w, d + 1), {j: two_c * arr for j, arr in P.items()})
    return out


def _apply_state(ctx, state, op: OpExpr, batch: _Batch):
    out: dict = {}
    for (p, q, i, e), coeff in op.terms.items():
        st = state
        if e:
            st = _refl_state(ctx, st)
        if i:
            st = _rot_state(ctx, st, i)
        for _ in range(q):
            st = _dphi_state(ctx, st)
        for _ in range(p):
            st = _dr_state(ctx, st, batch)
        for (m, al, be, ga), u in coeff.terms.items():
            fac = batch.ppow(al, be, ga)
            for (w, d), P in st.items():
                wu = _cached_zr(ctx, ("mul", w, u), lambda w=w, u=u: w * u)
                if wu.is_zero():
                    continue
                if fac is None:
                    _merge(out, (wu, d + m), P)
                else:
                    _merge(out, (wu, d + m),
                           {j: arr * fac for j, arr in P.items()})
    return out


def _eval_state(ctx, state, batch: _Batch):
    total = np.zeros(batch.T, complex)
    for (w, d), P in state.items():
        poly = np.zeros(batch.T, complex)
        for j, arr in P.items():
            poly += arr * batch.zpow(j)
        total += batch.wval(w) * batch.r ** (batch.s + d) * poly
    return total * batch._gauss


def _chain_value(ctx, weight: int, chain, batch: _Batch):
    state = {(ZRat.const(ctx, 1), 0): dict(batch.P)}
    for op in reversed(chain):       # rightmost factor acts first
        state = _apply_state(ctx, state, op, batch)
    return weight * _eval_state(ctx, state, batch)


# ---------------------------------------------------------------------------
# checks and reports
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class OracleReport:
    status: str                  # "pass" | "fail"
    trials: int
    max_rel_dev: float
    num_over_tol: int
    tol: float
    seed: int

    def to_dict(self) -> dict:
        return asdict(self)


def _finish(lhs_tot, rhs_tot, scale, trials, tol, seed) -> OracleReport:
    dev = np.abs(lhs_tot - rhs_tot) / scale
    max_dev = float(dev.max()) if trials else 0.0
    over = int((dev > tol).sum())
    return OracleReport(
        status="pass" if over == 0 else "fail",
        trials=trials, max_rel_dev=max_dev, num_over_tol=over,
        tol=tol, seed=seed,
    )


def _run_ops(ctx, lhs, rhs, trials, tol, seed, invariant) -> OracleReport:
    rng = np.random.default_rng(seed)
    k = ctx.k
    batch = _Batch(rng, trials, k, invariant)
    for _ in range(_MAX_ROUNDS):
        parts_l = [_chain_value(ctx, wgt, chain, batch) for wgt, chain in lhs]
        parts_r = [_chain_value(ctx, wgt, chain, batch) for wgt, chain in rhs]
        scale = np.zeros(batch.T)
        for part in parts_l + parts_r:
            scale = np.maximum(scale, np.abs(part))
        bad = scale < _DEGENERATE
        n_bad = int(bad.sum())
        if not n_bad:
            break
        batch.splice(bad, _Batch(rng, n_bad, k, invariant))
    else:
        raise OracleError("sample kept degenerating after redraws")
    lhs_tot = sum(parts_l, np.zeros(batch.T, complex))
    rhs_tot = sum(parts_r, np.zeros(batch.T, complex))
    return _finish(lhs_tot, rhs_tot, scale, trials, tol, seed)


def _run_angle(k, f, g, trials, tol, seed) -> OracleReport:
    rng = np.random.default_rng(seed)
    phi = rng.uniform(0.0, math.pi / (2 * k), trials)
    for _ in range(_MAX_ROUNDS):
        bad = ((np.abs(np.sin(k * phi)) < _MARGIN)
               | (np.abs(np.cos(k * phi)) < _MARGIN))
        lv = np.array([f(x) for x in phi])
        rv = np.array([g(x) for x in phi])
        scale = np.maximum(np.abs(lv), np.abs(rv))
        bad |= scale < _DEGENERATE
        n_bad = int(bad.sum())
        if not n_bad:
            break
        phi[bad] = rng.uniform(0.0, math.pi / (2 * k), n_bad)
    else:  # pragma: no cover - constants on one side keep the scale up
        raise OracleError("sample kept degenerating after redraws")
    return _finish(lv, rv, scale, trials, tol, seed)


def numeric_check(lhs: OpExpr, rhs: OpExpr, trials: int = 100,
                  tol: float = 1e-9, seed: int = DEFAULT_SEED) -> OracleReport:
    """Compare two operators on ``trials`` random (test function, point)
    pairs; pass iff the largest relative deviation stays below ``tol``."""
    if trials < 1:
        raise OracleError("trials must be at least 1")
    if lhs.ctx is not rhs.ctx:
        raise OracleError("operands live in different field contexts")
    return _run_ops(lhs.ctx, [(1, [lhs])], [(1, [rhs])],
                    trials, tol, seed, invariant=False)


def numeric_check_spec(spec, k: int, trials: int = 100, tol: float = 1e-9,
                       seed: int = DEFAULT_SEED) -> OracleReport:
    """Run one numeric specification as produced by the suite rows:
    ("ops", lhs, rhs), ("ops-invariant", lhs, rhs) with lists of weighted
    operator chains, or ("angle", f, g) with plain callables of phi."""
    if trials < 1:
        raise OracleError("trials must be at least 1")
    kind = spec[0]
    if kind == "angle":
        return _run_angle(k, spec[1], spec[2], trials, tol, seed)
    if kind in ("ops", "ops-invariant"):
        ctx = ctx_new(k)
        return _run_ops(ctx, spec[1], spec[2], trials, tol, seed,
                        invariant=(kind == "ops-invariant"))
    raise OracleError(f"unknown numeric spec kind {kind!r}")
