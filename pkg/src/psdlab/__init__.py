"""psdlab: numerical laboratory for spectral instability of
non-self-adjoint semiclassical operator systems.

The package quantizes matrix-valued phase-space symbols to dense
operators on a periodic grid, scans smallest singular values of the
shifted operators, fits the resulting scaling laws in the small
parameter h, constructs explicit quasimodes certifying resolvent lower
bounds, and classifies symbols pointwise (principal type, bracket
signs, quasi-symmetrizability, subelliptic/finite type).
"""

__version__ = "0.1.0"

from .symbols import (
    PhasePoint,
    PhaseGrid,
    MatrixSymbol,
    SpectralPoint,
    EigGerm,
    eval_and_derive,
    spectral_at,
    sigma_sample,
    sigma_infinity_probe,
    xi_classify,
    germ_track,
    elsner_check,
    moebius_reduce,
)
from .quantize import GridSpec, QuantizedOperator, quantize_poly, quantize_fourier, apply
from .resolvent import ScalingFit, PseudospectrumScan, sigma_min_at, scan, exponent_fit, spectrum_and_gap
from .quasimodes import (
    Quasimode,
    ResidualCurve,
    scaling_quasimode,
    gaussian_beam,
    system_embed,
    kernel_quasimode_52,
    residual_sweep,
)
from .classify import (
    PrincipalTypeVerdict,
    BracketVerdict,
    QuasiSymVerdict,
    FiniteTypeReport,
    principal_type_at,
    poisson_bracket,
    lambda_pm_scan,
    winding_index,
    quasi_symmetric_check,
    symmetrizer_verify,
    spectral_projection,
    approximation_check,
    omega_delta,
    finite_type_order,
    hessian_bound_check,
)

__all__ = [name for name in dir() if not name.startswith("_")]
