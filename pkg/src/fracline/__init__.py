"""Riemann-Liouville fractional operators on the real line, realized as Fourier
multipliers, with a certified spectral solver for

    p D^{2-mu} u + q D^{(2-mu)*} u + a D u + b u = f.
"""
from .errors import (FraclineError, GridMismatchError, InfiniteGainError, InvalidArgumentError,
                     NearSingularSymbolError, NoCertificateError, NonzeroMeanError,
                     SingularSymbolError, SymmetryViolationError, UnsupportedInputError)
from .rl_ops import (LEFT, RIGHT, FracOrder, GLScheme, Side, apply_rl, dilate, gl_derivative,
                     rl_symbol, translate, weak_pairing_residual)
from .solver import (SolveResult, apply_L, apply_L_adjoint, regularity_gain, solve,
                     symmetry_check)
from .spectral_core import (GridSpec, SampledFunction, Spectrum, build_grid, forward_transform,
                            hs_norm, inner_product, inverse_transform)
from .wellposedness import (AlphaScan, Case, NormConstants, OperatorCoefficients,
                            WellposednessReport, classify, norm_constants, operator_symbol,
                            stability_constant)

__version__ = "0.1.0"
