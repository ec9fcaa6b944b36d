"""Exception hierarchy shared by all modules."""


class StcurveError(Exception):
    """Base class for every error raised by this package."""


# numerical semigroups

class NotNumerical(StcurveError, ValueError):
    pass


class ZeroGenerator(StcurveError, ValueError):
    pass


class NotMember(StcurveError, ValueError):
    pass


# polynomials and series

class WeightMismatch(StcurveError, ValueError):
    pass


class ZeroPolynomial(StcurveError, ValueError):
    pass


class ValuationOfZero(StcurveError, ValueError):
    pass


class ValuationUndetermined(StcurveError, ValueError):
    """Every term below the truncation order vanished, so the valuation is only bounded below."""

    def __init__(self, lower_bound):
        super().__init__(f"valuation is >= {lower_bound}; all known terms vanish")
        self.lower_bound = lower_bound


# minimal relations

class NonUniqueH1Witness(StcurveError):
    pass


class InternalInconsistency(StcurveError):
    pass


class DegenerateRelation(StcurveError, ValueError):
    pass


class NotApplicable(StcurveError, ValueError):
    """Raised when an operation that needs the non complete intersection case gets the other one."""


# Bresinsky reduction

class ReductionFailure(StcurveError):
    pass


# deformations

class TailAtOrBelowBase(StcurveError, ValueError):
    pass


class InvalidTail(StcurveError, ValueError):
    pass


class ShapeMismatch(StcurveError, ValueError):
    pass


class TruncationTooSmall(StcurveError, ValueError):
    pass


class TruncationExhausted(StcurveError):
    pass


class SemigroupJump(StcurveError):
    """A residual in the relation lift has a valuation outside the semigroup."""

    def __init__(self, value, relation_index=None):
        where = "" if relation_index is None else f" while lifting f{relation_index + 1}"
        super().__init__(f"residual valuation {value} is not in the semigroup{where}")
        self.value = value
        self.relation_index = relation_index


# families

class InvalidParameters(StcurveError, ValueError):
    pass
