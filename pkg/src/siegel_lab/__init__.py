"""Desk-scale numerical laboratory for real zeros of Dirichlet L-functions,
Goldbach-sum audits and the Ramanujan/Gauss identities behind them."""

__version__ = "0.1.0"

from .arith import Factorization, PrimeTable, euler_phi, factorize, kronecker, li, mobius, sieve_primes
from .characters import (
    DirichletCharacter,
    RootOfUnity,
    UnitGroupStructure,
    char_value,
    conductor,
    enumerate_characters,
    gauss_sum,
    gauss_sums_all,
    kronecker_character,
    primitive_characters,
    primitive_inducer,
    ramanujan_sum,
    real_characters,
    real_odd_characters,
    unit_group,
)
from .errors import CapacityError, DomainError, PreconditionError, SiegelLabError, UnsupportedError
from .goldbach import Variant, goldbach_count, twin_prime_constant, whle_audit
from .kernels import backend, set_backend
from .lfunction import bounds_report, evaluate_L, exceptional_region_test, integral_term, pnt_ap_residual, scan_real_zeros
from .quadforms import class_number_formula_check, enumerate_reduced_forms, goldfeld_comparator, is_fundamental
from .theorem_lab import (
    eligible_modulus,
    explicit_decomposition,
    step2_identities,
    step3_audit,
    sum_S_direct,
    sum_S_folded,
)
