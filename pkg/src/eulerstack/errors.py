"""Exception hierarchy.

Every domain failure raised by the engine derives from :class:`EulerStackError`;
the CLI maps these to exit code 1.
"""


class EulerStackError(Exception):
    """Base class for all domain errors."""


class GroupAxiomError(EulerStackError, ValueError):
    pass


class NotClosed(GroupAxiomError):
    pass


class NotAssociative(GroupAxiomError):
    pass


class NoIdentity(GroupAxiomError):
    pass


class NoInverse(GroupAxiomError):
    pass


class NotAHomomorphism(EulerStackError, ValueError):
    pass


class NotASubgroup(EulerStackError, ValueError):
    pass


class UnsupportedGroup(EulerStackError):
    pass


class StackMismatch(EulerStackError):
    pass


class NotConstructible(EulerStackError):
    pass


class UndefinedWeight(EulerStackError):
    """A weight of 0 or infinity met a place where it is not allowed."""

    def __init__(self, msg, stratum=None):
        super().__init__(msg)
        self.stratum = stratum


class InvalidMorphism(EulerStackError):
    pass


class ZeroKernelChi(EulerStackError):
    def __init__(self, msg, stratum=None):
        super().__init__(msg)
        self.stratum = stratum


class InsufficientStabData(EulerStackError):
    pass


class NotFiniteType(EulerStackError):
    pass


class NotRepresentable(EulerStackError):
    pass


class NonFiniteStabilizer(EulerStackError):
    pass


class InvalidGSet(EulerStackError, ValueError):
    pass


class DescriptorError(EulerStackError, ValueError):
    """Malformed JSON descriptor (a usage/parse error, not a domain error)."""
