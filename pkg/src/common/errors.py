# src/common/errors.py

from typing import Any, Optional, Type

from .logging_utils import get_logger

_log = get_logger("common.errors")


# -------------------------
# Base + grouping
# -------------------------
class ThinPosetError(ValueError):
    """Base class for every library error. Optional certificate in .witness."""

    def __init__(self, msg: str = "", witness: Any = None):
        super().__init__(msg)
        self.witness = witness


class PosetInputError(ThinPosetError):
    """Input is not a valid graded poset (CLI exit 3)."""


class InfeasibleError(ThinPosetError):
    """Request is well formed but mathematically infeasible (CLI exit 4)."""


class ParameterError(ThinPosetError):
    """Bad parameters to a constructor or command (CLI exit 2)."""


# -------------------------
# poset_core / constructors
# -------------------------
class EmptyPoset(PosetInputError):
    pass


class UnknownElement(PosetInputError):
    pass


class CycleError(PosetInputError):
    pass


class NotGraded(PosetInputError):
    pass


class NotReduced(PosetInputError):
    pass


class IdCollision(PosetInputError):
    pass


class NotComparable(ThinPosetError):
    pass


class TooLarge(ParameterError):
    pass


class RankMismatch(ParameterError):
    pass


class MissingBounds(ParameterError):
    pass


class RankTooSmall(ParameterError):
    pass


# -------------------------
# diamonds / coloring
# -------------------------
class NotThin(ThinPosetError):
    pass


class IntervalTooLarge(ThinPosetError):
    pass


class NotTransitiveNoCleanWitness(ThinPosetError):
    pass


class NotDiamondTransitive(ThinPosetError):
    pass


class NoBottom(ThinPosetError):
    pass


class NotCentral(ThinPosetError):
    pass


class NotBalanced(InfeasibleError):
    pass


class NoBalancedColoring(InfeasibleError):
    pass


class NotEmbedding(ThinPosetError):
    pass


# -------------------------
# functor_complex / khovanov
# -------------------------
class ShapeMismatch(ThinPosetError):
    pass


class GradingMismatch(ThinPosetError):
    pass


class NotFunctorial(InfeasibleError):
    pass


class DSquaredNonzero(ThinPosetError):
    """Internal consistency failure: indicates a bug, never expected on valid input."""


class NaturalityViolated(ThinPosetError):
    pass


class ColoringIncompatible(ThinPosetError):
    pass


class NotUpperIdeal(ThinPosetError):
    pass


class NotChainMap(ThinPosetError):
    pass


class MalformedPD(ParameterError):
    pass


class CodecError(ParameterError):
    """Raised when a JSON payload is malformed or invalid."""


def require(
    condition: bool,
    exc_type: Type[ThinPosetError],
    msg: str,
    witness: Optional[Any] = None,
) -> None:
    if not condition:
        _log.warning(f"{exc_type.__name__}: {msg}")
        raise exc_type(msg, witness=witness)
