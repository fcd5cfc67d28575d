"""Primitive divisors of gamma^n - 1 for rational and quadratic gamma: exact arithmetic, heights,
valuations, norm-one theta elements and evaluators for the explicit bounds."""

from .arith import Factorization, cyclotomic_coeffs, cyclotomic_value, factor, is_prime, nu_p
from .bounds import YuBoundInput, sigma_bounds, stewart_threshold, valuation_bound_rhs, yu_rhs
from .config import DEFAULT, Effort, RunConfig
from .errors import BudgetExceeded, NotAUnit, PrimdivError, RootOfUnity
from .height import cyclotomic_height_residual, height, height_floor_check, height_quad, height_rational
from .ideals import PrimeIdeal, ideal_in_inverse_class, primes_above, principal_generator, split_count
from .quadfield import QuadElement, QuadraticField, kronecker, make_field
from .scan import scan_quadratic, scan_rational
from .suites import SUITES, run_suite
from .theta import independence_rank, max_root_exponent, square_class_independent, theta, verify_theta
from .valuation import mult_order, nu_direct_oracle, nu_ideal, nu_power_minus_one

__version__ = "0.1.0"
