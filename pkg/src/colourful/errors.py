"""Exception hierarchy shared by every module of the package."""


class ColourfulError(Exception):
    """Base class for all errors raised by this package."""


class GraphError(ColourfulError, ValueError):
    """A coloured graph violates its structural invariants."""


class InvalidSolution(ColourfulError, ValueError):
    """An edge set references edges that are not in the host graph."""


class InvalidPartition(ColourfulError, ValueError):
    """A vertex partition overlaps, misses vertices or has empty parts."""


class NotACaterpillar(ColourfulError, ValueError):
    pass


class DisconnectedInput(ColourfulError, ValueError):
    pass


class PreconditionViolated(ColourfulError, ValueError):
    pass


class EmptyArc(ColourfulError, ValueError):
    pass


class NotANecklace(ColourfulError, ValueError):
    pass


class AmbiguousBackbone(ColourfulError, ValueError):
    """No backbone hint was given and none could be discovered unambiguously."""


class NonColourfulBead(ColourfulError, ValueError):
    pass


class FormulaNotSimplified(ColourfulError, ValueError):
    pass


class ClauseSizeError(ColourfulError, ValueError):
    pass


class AssignmentNotSatisfying(ColourfulError, ValueError):
    pass


class InvalidWitness(ColourfulError, ValueError):
    """An edge set cannot be mapped back to a satisfying assignment."""


class NodeLimitExceeded(ColourfulError, RuntimeError):
    pass


class InstanceTooLarge(ColourfulError, ValueError):
    pass


class TooManyVariables(ColourfulError, ValueError):
    pass


class ParseError(ColourfulError, ValueError):
    """Malformed input text; ``line`` is 1-based, or ``None`` if not line-specific."""

    def __init__(self, message: str, line: int | None = None, kind: str = "syntax-error"):
        self.line = line
        self.kind = kind
        where = f"line {line}: " if line is not None else ""
        super().__init__(f"{where}{message}")


class ClauseTooLarge(ParseError):
    def __init__(self, message: str, line: int | None = None):
        super().__init__(message, line, kind="clause-too-large")
