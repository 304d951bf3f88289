"""Exact linearization of self-convolutions of generalized Fibonacci numbers."""

from .exact import binomial, falling_factorial, rational_pow
from .identities import (CubicLinearization, cubic_linearization, verify_coefxS,
                         verify_corollary, verify_devF, verify_devS,
                         verify_tribonacci_F2, verify_tribonacci_selfconv)
from .linearize import (AlphaTable, alpha_by_convolution, alpha_by_recurrence,
                        alpha_by_series, alpha_poly, beta_poly, check_pde,
                        check_polarization)
from .poly import (BinaryForm, CubicSpec, DegenerateSpecError, Polynomial,
                   QuadraticSpec, invariant_j, transvection)
from .report import VerificationReport
from .sequences import conv_power, gen_fib, tribonacci
from .series import BivariateSeries, TruncatedSeries, build_A

__version__ = "0.1.0"
