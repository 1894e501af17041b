"""Optimal complex AGM, period lattices and elliptic logarithms of complex elliptic curves."""

from __future__ import annotations

__version__ = "0.1.0"

from .agm import AgmResult, PairStatus, agm, agm_optimal, agm_real, agm_scheduled, agm_step, is_good
from .agm_values import CosetReport, agm_value_reports, classify_agm_value, coset_basis
from .curve import (
    CurveInvariants,
    CurveRoots,
    WeierstrassCoeffs,
    invariants_from_coeffs,
    invariants_from_roots,
    roots_from_invariants,
)
from .elog import (
    ElogResult,
    ElogState,
    elliptic_log,
    elog,
    elog_2torsion,
    elog_real_negdisc,
    elog_real_posdisc,
)
from .errors import *  # noqa: F401,F403
from .lattice import (
    Coordinates,
    Lattice,
    ReduceMode,
    coordinates,
    is_member,
    is_primitive,
    is_rectangular,
    make_oriented,
    reduce_basis,
    reduce_mod,
)
from .numerics import (
    PrecisionContext,
    format_cnum,
    parse_cnum,
    principal_arctan,
    principal_sqrt,
)
from .oracle import INFINITY, Point, WpValue, point_add, point_neg, wp, wp_limit
from .periods import (
    PeriodTriple,
    SignSelection,
    choose_signs,
    period_basis,
    periods_real_negative_disc,
    periods_real_positive_disc,
)
