"""Coefficient machinery for the hypergeometric convolution operator class.

The pieces, bottom up: truncated power-series arithmetic (`series`), the
diagonal-multiplier operator and its classical presets (`hypergeom`),
Caratheodory-class sampling (`caratheodory`), closed-form coefficient bounds
(`bounds`), and the numerical certification layer (`verify`).  The search
kernels run compiled when the extension was built, pure numpy otherwise;
`KERNEL_BACKEND` says which.
"""

from ._kernels import BACKEND as KERNEL_BACKEND
from .bounds import (
    Functional,
    a2_bound,
    a2a3_a4_bound_reported,
    a3_bound,
    a4_bound,
    a5_bound_reported,
    bound_for,
    fs_complex_bound,
    fs_middle_interval,
    fs_real_bound,
    functional_value,
    h2_1_bound,
    h2_2_bound,
    h3_1_bound_reported,
    hankel3_assembly,
    specialization_table,
    table_to_csv,
)
from .caratheodory import (
    HerglotzAtoms,
    LZPoint,
    closed_form_coeffs,
    member_from_atoms,
    member_from_phi,
    root_atoms,
    sample_points,
    toeplitz_validate,
)
from .hypergeom import (
    HohlovParams,
    apply,
    apply_inverse,
    contiguous_shift_residual,
    multiplier_sequence,
    pochhammer,
    preset,
)
from .series import TruncatedSeries, from_normalized, identity, monomial
from .verify import (
    SearchConfig,
    VerificationReport,
    brute_force_max,
    discrepancy_report,
    extremal_member,
    membership_test,
    power_extremal_member,
    subordination_power_test,
    sufficient_condition_check,
)

__version__ = "0.1.0"

__all__ = [
    "Functional",
    "HerglotzAtoms",
    "HohlovParams",
    "KERNEL_BACKEND",
    "LZPoint",
    "SearchConfig",
    "TruncatedSeries",
    "VerificationReport",
    "a2_bound",
    "a2a3_a4_bound_reported",
    "a3_bound",
    "a4_bound",
    "a5_bound_reported",
    "apply",
    "apply_inverse",
    "bound_for",
    "brute_force_max",
    "closed_form_coeffs",
    "contiguous_shift_residual",
    "discrepancy_report",
    "extremal_member",
    "from_normalized",
    "fs_complex_bound",
    "fs_middle_interval",
    "fs_real_bound",
    "functional_value",
    "h2_1_bound",
    "h2_2_bound",
    "h3_1_bound_reported",
    "hankel3_assembly",
    "identity",
    "member_from_atoms",
    "member_from_phi",
    "membership_test",
    "monomial",
    "multiplier_sequence",
    "pochhammer",
    "power_extremal_member",
    "preset",
    "root_atoms",
    "sample_points",
    "specialization_table",
    "subordination_power_test",
    "sufficient_condition_check",
    "table_to_csv",
    "toeplitz_validate",
    "__version__",
]
