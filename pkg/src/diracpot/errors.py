"""Exception hierarchy.

Every error carries a ``category`` string that the CLI reports verbatim.
"""


class DiracPotError(Exception):
    category = "Error"


class InvalidParams(DiracPotError, ValueError):
    category = "InvalidParams"


class InvalidStrength(InvalidParams):
    pass


class InvalidKappa(InvalidParams):
    pass


class NoBoundLevels(DiracPotError):
    category = "NoBoundLevels"


class IndexBeyondSpectrum(DiracPotError, IndexError):
    category = "NoBoundLevels"


class ComplexExponent(DiracPotError, ValueError):
    category = "InvalidParams"


class PochhammerPole(DiracPotError, ZeroDivisionError):
    category = "ParameterDegeneracy"


class ParameterDegeneracy(DiracPotError, ZeroDivisionError):
    category = "ParameterDegeneracy"


class ValidityViolation(DiracPotError, ValueError):
    category = "InvalidParams"


class BasisMismatch(DiracPotError, ValueError):
    category = "InvalidParams"


class EmptyGrid(DiracPotError, ValueError):
    category = "InvalidParams"


class QuadratureFailure(DiracPotError, ArithmeticError):
    category = "OracleFailure"


class OracleFailure(DiracPotError, RuntimeError):
    category = "OracleFailure"


class GridTooCoarse(OracleFailure):
    pass


class NoRoot(OracleFailure):
    pass


class MultipleRoots(OracleFailure):
    def __init__(self, message, candidates=()):
        super().__init__(message)
        self.candidates = list(candidates)


class StiffIntegration(OracleFailure):
    pass


class InitializationFailure(OracleFailure):
    pass
