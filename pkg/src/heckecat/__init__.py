"""Exact Hecke-algebra and graded category O K-group calculus for finite Weyl groups."""

from .coxeter import CartanType, CoxeterGroup, build_group
from .errors import HeckeCatError
from .functors import (
    apply_derived_shuffle,
    apply_derived_twist,
    apply_theta,
    cs_simple,
    ts_general,
    ts_simple,
    twist_nabla_structure,
    twist_verma,
    zuckerman_L1_simple,
    zuckerman_L2_simple,
)
from .hecke import (
    HeckeElement,
    KLCache,
    dual_kl_basis,
    dual_twisted_kl_basis,
    h_bar,
    h_inv_std,
    h_mul,
    h_star,
    kl_basis,
    kl_cache,
    kl_poly,
    mu,
    tau,
    twisted_kl_basis,
)
from .kgroup import (
    BasisTag,
    CharacterVector,
    change_basis,
    parse_class,
    r_coefficient,
    ringel_dual,
    transport,
    verma_in_nabla,
)
from .laurent import LaurentPoly
from .oracle import VerificationReport, bruhat_by_subword, kl_by_bar_solve, verify_suite

__version__ = "0.1.0"
