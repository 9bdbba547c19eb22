"""Unit-weight power-sum representations on the unit circle and their uses.

N = 2n+1 distinct unimodular points lambda_k are constructed so that their
first n power sums equal prescribed numbers; the same points drive simple
partial fraction, exponential-sum and h-sum approximation, and
integration-free harmonic extraction from trigonometric signals.
"""
from .approx import (HSeries, exp_sum_bound, exp_sum_eval, h1_sum_eval, h_sum_build,
                     h_sum_eval, spf_error_bound, spf_eval, spf_interpolation_order)
from .cpoly import CirclePhases, CPolynomial, build_P, disk_zero_free, n0, q_real, roots_on_circle
from .harmonics import (ExtractionOperator, TrigPolynomial, combination_phases,
                        extract_harmonic, extraction_phases, fourier_coeffs)
from .representation import (BoundParams, Representation, best_tail_bound, power_sum,
                             represent, tail_bound_thm11, tail_bound_thm12, tail_residual)
from .series import TaylorPolynomial, eval_deriv, eval_poly, exp_antiderivative_taylor

__version__ = "0.1.0"

__all__ = [
    "best_tail_bound",
    "BoundParams",
    "build_P",
    "CirclePhases",
    "combination_phases",
    "CPolynomial",
    "disk_zero_free",
    "eval_deriv",
    "eval_poly",
    "exp_antiderivative_taylor",
    "exp_sum_bound",
    "exp_sum_eval",
    "extract_harmonic",
    "extraction_phases",
    "ExtractionOperator",
    "fourier_coeffs",
    "h1_sum_eval",
    "h_sum_build",
    "h_sum_eval",
    "HSeries",
    "n0",
    "power_sum",
    "q_real",
    "represent",
    "Representation",
    "roots_on_circle",
    "spf_error_bound",
    "spf_eval",
    "spf_interpolation_order",
    "tail_bound_thm11",
    "tail_bound_thm12",
    "tail_residual",
    "TaylorPolynomial",
    "TrigPolynomial",
]
