"""Exact operator algebra for dihedral differential-difference operators.

The package builds the radial and angular deformed derivatives attached to
the dihedral group of order 4k, normal-orders arbitrary polynomial
expressions in them over an exact cyclotomic scalar field, and verifies
every structural identity (commutators, adjoints, squares, invariance,
projections, trigonometric summation lemmas) with exact zero residuals plus
an independent numeric witness.

Layers, bottom to top:

- ``cyclofield``: the field Q(zeta_N), N = lcm(4, 2k), exact.
- ``coeffring``: rational functions of z = e^{i phi} with factored
  denominators, and the full coefficient ring (powers of r, parameters
  a, b, w2).
- ``opalgebra``: normal-ordered operator expressions and their product,
  adjoint, and identity-representation projection.
- ``builders``: the named operators (Dr, Dphi, Hk, Xk, the invariant
  extension, the group-algebra counterterm) for any k, plus documented
  mutations for fail-path testing.
- ``identities``: the check registry with exact residual reports.
- ``oracle``: the analytic-on-test-functions numeric second witness.
- ``exprparse``: the expression grammar and round-tripping printer.
- ``cli``: the ``dunklops`` command.
"""

from .errors import (AlgebraError, CoeffError, DunklopsError, FieldError,
                     OracleError, ParseError, ScalarInversionError)
from .cyclofield import (DEFAULT_MAX_K, CycloScalar, FieldCtx, ctx_new,
                         max_k_ceiling)
from .coeffring import Coefficient, ZRat, cot_k, trig
from .opalgebra import (OpExpr, anticommutator, commutator, op_I, op_R,
                        op_coeff, op_dphi, op_dr, op_one, op_param,
                        op_product, op_r, op_scalar, op_sum, op_zero)
from .builders import (MUTATIONS, OPERATORS, Mutation, build_counterterm,
                       build_Dphi, build_Dphi_squared_expanded, build_Dr,
                       build_extended_Hk, build_Hk, build_I, build_R,
                       build_reflection_tail, build_S, build_Xk)
from .identities import (CHECK_IDS, DEFAULT_CHECK_IDS, CheckReport,
                         applicable, check, run_check, run_suite,
                         shadow_reports)
from .oracle import (DEFAULT_SEED, OracleReport, SamplePoint, TestFunc,
                     TestFuncSum, numeric_check, numeric_check_spec)
from .exprparse import (elaborate, parse, parse_op, pretty,
                        pretty_coefficient, pretty_zrat)

__version__ = "0.1.0"

__all__ = [
    "AlgebraError", "CoeffError", "DunklopsError", "FieldError",
    "OracleError", "ParseError", "ScalarInversionError",
    "DEFAULT_MAX_K", "CycloScalar", "FieldCtx", "ctx_new", "max_k_ceiling",
    "Coefficient", "ZRat", "cot_k", "trig",
    "OpExpr", "anticommutator", "commutator", "op_I", "op_R", "op_coeff",
    "op_dphi", "op_dr", "op_one", "op_param", "op_product", "op_r",
    "op_scalar", "op_sum", "op_zero",
    "MUTATIONS", "OPERATORS", "Mutation", "build_counterterm", "build_Dphi",
    "build_Dphi_squared_expanded", "build_Dr", "build_extended_Hk",
    "build_Hk", "build_I", "build_R", "build_reflection_tail", "build_S",
    "build_Xk",
    "CHECK_IDS", "DEFAULT_CHECK_IDS", "CheckReport", "applicable", "check",
    "run_check", "run_suite", "shadow_reports",
    "DEFAULT_SEED", "OracleReport", "SamplePoint", "TestFunc", "TestFuncSum",
    "numeric_check", "numeric_check_spec",
    "elaborate", "parse", "parse_op", "pretty", "pretty_coefficient",
    "pretty_zrat",
    "__version__",
]
