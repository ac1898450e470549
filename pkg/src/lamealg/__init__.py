"""Algebraic energies and closed-form eigenfunctions of the Lame equation

    psi'' + [E - m lam(lam + 1) sn^2 x] psi = 0

for integer and half-integer lam.
"""

from .elliptic import EllipticModulus, JacobiTriple, complete_K, jacobi, jacobi_am
from .errors import DomainError, InconsistentInputError, SpectralRealityError
from .lamefun import (
    Branch,
    ChebKind,
    ClassTag,
    EigenfunctionSpec,
    Factor,
    build_eigenfunctions,
    chebyshev_eval,
    count_zeros,
    evaluate,
    evaluate_with_derivatives,
    select,
)
from .polyfam import (
    CoeffTable,
    FamilyTag,
    Kind,
    LameIndex,
    RecurrencePair,
    coeff_table,
    critical_polynomial,
    recurrence_coefficients,
)
from .qes_oracle import Alg, AlgebraizationId, gauge_hamiltonian_matrix, generator_action, oracle_energies
from .spectrum import SpectrumResult, algebraic_energies, all_energies, family_energies, tridiagonal_from_recurrence
from .verify import Check, VerificationReport, check_ode_residual, check_structure, run_suite, verify_eigenfunction

__all__ = [
    "Alg", "AlgebraizationId", "Branch", "ChebKind", "Check", "ClassTag", "CoeffTable", "DomainError",
    "EigenfunctionSpec", "EllipticModulus", "Factor", "FamilyTag", "InconsistentInputError", "JacobiTriple",
    "Kind", "LameIndex", "RecurrencePair", "SpectralRealityError", "SpectrumResult", "VerificationReport",
    "algebraic_energies", "all_energies", "build_eigenfunctions", "chebyshev_eval", "check_ode_residual",
    "check_structure", "coeff_table", "complete_K", "count_zeros", "critical_polynomial", "evaluate",
    "evaluate_with_derivatives", "family_energies", "gauge_hamiltonian_matrix", "generator_action", "jacobi",
    "jacobi_am", "oracle_energies", "recurrence_coefficients", "run_suite", "select", "tridiagonal_from_recurrence", "verify_eigenfunction",
]
