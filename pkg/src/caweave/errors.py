"""Exception types.

Input problems derive from :class:`ValidationError` (CLI exit code 2).
Broken invariants that would falsify a proven property derive from
:class:`InvariantBreach` (CLI exit code 3).
"""


class CaweaveError(Exception):
    pass


class ValidationError(CaweaveError, ValueError):
    pass


class InvariantBreach(CaweaveError, AssertionError):
    pass


class NotMonic(ValidationError):
    pass


class ReducibleOrNonPrimitive(ValidationError):
    """Polynomial failed the primitivity test.

    ``reason`` is ``"reducible"`` or ``"imprimitive"`` (irreducible, but x
    does not generate the full multiplicative group).
    """

    def __init__(self, poly: int, reason: str, detail: str = ""):
        self.poly = poly
        self.reason = reason
        msg = f"{reason} polynomial"
        if detail:
            msg += f": {detail}"
        super().__init__(msg)


class DegreeOutOfRange(ValidationError):
    pass


class ZeroState(ValidationError):
    pass


class EmptyInput(ValidationError):
    pass


class PeriodMismatch(ValidationError):
    pass


class NotDivisible(ValidationError):
    pass


class WidthMismatch(ValidationError):
    pass


class IndexOutOfRange(ValidationError, IndexError):
    pass


class UnsupportedT(ValidationError):
    pass


class MaxLcRequired(ValidationError):
    pass


class BudgetExceeded(ValidationError):
    pass


class DecompositionFailed(InvariantBreach):
    pass


class NotFound(InvariantBreach):
    pass
