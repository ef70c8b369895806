"""Hopf orders in K[C_p^n] and (K[C_p^n])^* over K = F_p(t), computed exactly."""

from .localfield import INF, LocalScalar, PrimeConfig, frobenius, gen_binom, scalar_parse, valuation, wp
from .groupalg import (
    DualElement,
    GroupAlgebraElement,
    TensorElement,
    apply_group_automorphism,
    hopf_maps,
    pair,
    trunc_exp_element,
    xi,
)
from .orders import (
    DualFamilyParams,
    OrderPresentation,
    VerificationReport,
    build_dual,
    build_primal,
    check_conditions,
    contains,
    discriminant_valuation,
    dualize,
    koch_matrix,
    koch_order,
    monomial_basis,
    orders_equal,
    pairing_matrix,
    params_equivalent,
    pth_power_witness,
    verify_hopf_order,
)

__version__ = "0.1.0"
