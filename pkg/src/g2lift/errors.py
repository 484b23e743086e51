"""Exception types shared across the engine."""


class G2LiftError(Exception):
    pass


class DivisionByZero(G2LiftError, ZeroDivisionError):
    pass


class ParseError(G2LiftError, ValueError):
    pass


class AlgebraMismatch(G2LiftError, ValueError):
    pass


class InhomogeneousBracket(G2LiftError, ValueError):
    pass


class InadmissibleParameter(G2LiftError, ValueError):
    pass


class SupportViolation(G2LiftError, ValueError):
    pass


class SectionSolveFailure(G2LiftError, RuntimeError):
    pass


class LiftSolveFailure(G2LiftError, RuntimeError):
    pass


class WeightMismatch(G2LiftError, ValueError):
    pass


class HypothesisViolation(G2LiftError, ValueError):
    pass


class InternalInvariantError(G2LiftError, RuntimeError):
    pass
