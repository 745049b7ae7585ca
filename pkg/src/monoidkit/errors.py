"""Exception types shared across the package."""


class MonoidKitError(Exception):
    """Base class for all library errors."""


class DomainError(MonoidKitError):
    """An element does not belong to the monoid it was used with."""


class PresentationError(MonoidKitError):
    """A monoid presentation is malformed (bad sizes, empty generators...)."""


class AxiomViolation(PresentationError):
    """A Cayley table fails a monoid axiom; carries a witness."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class NotCancellative(MonoidKitError):
    """Literal formal-difference was requested on a non-cancellative monoid."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class NotAnEquivalence(MonoidKitError):
    """A literal fraction relation failed transitivity; carries the triple."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class NotAGroup(MonoidKitError):
    """Negation was requested on a monoid with no negation procedure."""


class ModulationUndefined(MonoidKitError):
    """Scalar modulation needs a certified uniquely divisible monoid."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class BoundExhausted(MonoidKitError):
    """A bounded search ran out of budget before reaching a verdict."""

    def __init__(self, message, bound=None, pair=None):
        super().__init__(message)
        self.bound = bound
        self.pair = pair


class PathTypeError(MonoidKitError):
    """An embedding path does not type-check against the category table."""


class ParseError(PresentationError):
    """Presentation text could not be parsed; carries line number."""

    def __init__(self, message, line=None):
        super().__init__(message if line is None else f"line {line}: {message}")
        self.line = line
