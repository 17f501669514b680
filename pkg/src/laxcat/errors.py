"""Exception hierarchy.

Absence of a limit is usually reported as ``None`` by the search routines;
the exceptions below are raised when a construction cannot proceed because
an instance it needs is missing, or when input data is malformed.
"""

from __future__ import annotations


class LaxcatError(Exception):
    """Base class for every error raised by the package."""


# -- validation of finite categories --------------------------------------


class ValidationError(LaxcatError):
    pass


class NonTotalComposition(ValidationError):
    def __init__(self, message: str, pair=None):
        super().__init__(message)
        self.pair = pair


class IdentityLawViolation(ValidationError):
    def __init__(self, morphism: str, message: str | None = None):
        super().__init__(message or f"identity law fails for {morphism}")
        self.morphism = morphism


class AssociativityViolation(ValidationError):
    def __init__(self, h: str, g: str, f: str):
        super().__init__(f"associativity fails for ({h}, {g}, {f})")
        self.triple = (h, g, f)


class NotAFunctor(ValidationError):
    pass


class NotNatural(ValidationError):
    pass


class NotParallel(LaxcatError):
    pass


class ObjectNotFound(LaxcatError):
    pass


class SizeLimitExceeded(LaxcatError):
    """A construction or enumeration would exceed the configured bounds."""


# -- universal properties -------------------------------------------------


class NotACone(LaxcatError):
    pass


class MissingLimit(LaxcatError):
    def __init__(self, what: str):
        super().__init__(f"missing limit: {what}")
        self.what = what


class MissingColimit(LaxcatError):
    def __init__(self, what: str):
        super().__init__(f"missing colimit: {what}")
        self.what = what


class MissingProducts(MissingLimit):
    pass


class MissingPullbacks(MissingLimit):
    pass


MissingPullback = MissingPullbacks


class MissingExponential(MissingLimit):
    def __init__(self, x: str, y: str):
        super().__init__(f"exponential {x} => {y}")
        self.x, self.y = x, y


class MissingEnd(MissingLimit):
    pass


class NoTerminalObject(MissingLimit):
    def __init__(self, category: str = "X"):
        super().__init__(f"terminal object of {category}")


class NoInitialObject(MissingColimit):
    def __init__(self, category: str = "X"):
        super().__init__(f"initial object of {category}")


# -- lax comma category ---------------------------------------------------


class NotComposable(LaxcatError):
    pass


class NoCommonCodomain(LaxcatError):
    pass


class BijectiveFailure(LaxcatError):
    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


class ShapeMismatch(LaxcatError):
    pass


class CoequalizerNotFiniteWithinBound(LaxcatError):
    def __init__(self, bound: int):
        super().__init__(
            f"coequalizer in Cat did not stabilize within composite depth {bound}"
        )
        self.bound = bound


# -- descent --------------------------------------------------------------


class StrictInitialMissing(LaxcatError):
    pass


class NotAPullbackSquare(LaxcatError):
    pass


class NotFullyFaithful(LaxcatError):
    pass


# -- presentation format --------------------------------------------------


class PresentationError(LaxcatError):
    """Input error that carries a source position."""

    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"{line}:{col}: {message}")
        self.line = line
        self.col = col
        self.detail = message


class FcatSyntaxError(PresentationError):
    def __init__(self, line: int, col: int, expected: str, found: str = ""):
        msg = f"expected {expected}" + (f", found {found!r}" if found else "")
        super().__init__(msg, line, col)
        self.expected = expected


class DuplicateName(PresentationError):
    pass


class UnknownReference(PresentationError):
    pass


class NotAntisymmetric(PresentationError):
    pass


class CyclicGraph(PresentationError):
    pass


class ElaborationError(PresentationError):
    """A validation error raised while elaborating, tagged with a position."""
