class DomainError(ValueError):
    """A parameter (m, lambda, family, index, ...) is outside the supported domain."""


class InconsistentInputError(ValueError):
    """Inputs that should be mutually consistent are not (e.g. energies that are not roots)."""


class SpectralRealityError(ArithmeticError):
    """An eigenvalue expected to be real carries a non-negligible imaginary part."""
