"""
The errors raised by toricprobe.  They all derive from ValueError, so callers catching ValueError keep working,
and carry a params dictionary that goes to the logger as is.
"""
from typing import Optional


class ToricProbeError(ValueError):
    """
    Base of every toricprobe error.
    """

    """
    Index of the offending atom in the input, when the error is about one atom.
    """
    atom_index: Optional[int] = None

    def __init__(self, message: str, atom_index: Optional[int] = None, params: Optional[dict] = None):
        """
        :param message: Human readable description, including the values involved.
        :param atom_index: The atom the error is about, if any.
        :param params: Extra values describing the failure, passed to the logger.
        """
        if atom_index is not None:
            message = f"atom {atom_index}: {message}"
        super().__init__(message)
        self.atom_index = atom_index
        self.params = dict(params) if params else {}
        if atom_index is not None:
            self.params.setdefault('atom_index', atom_index)

    @property
    def kind(self) -> str:
        """
        The error name as it appears in reports, e.g. 'InconsistentConstants'.
        """
        return type(self).__name__


class WrongLength(ToricProbeError):
    """A character has a length different from the ambient rank, or counts of characters and constants differ."""


class ZeroCharacter(ToricProbeError):
    """A defining character is the zero vector."""


class InconsistentConstants(ToricProbeError):
    """An integer relation among the characters maps to a nonzero value in Q/Z: the system has no solution."""


class NestedAtoms(ToricProbeError):
    """One atom of the arrangement is contained in another."""


class NotComparable(ToricProbeError):
    """Two layers were expected to be comparable in the poset of layers."""


class NotCorank1(ToricProbeError):
    """A set of atoms was expected to have exactly one more element than its rank."""


class EmptyIntersection(ToricProbeError):
    """The atoms of a set do not meet."""


class NotDivisorial(ToricProbeError):
    """The operation needs every atom to be a hypertorus."""


class DegreeMixed(ToricProbeError):
    """An element of a graded object is not homogeneous."""


class BasisDefect(ToricProbeError):
    """The no broken circuit monomials do not complement the relations in some degree."""


class ParseError(ToricProbeError):
    """An arrangement file could not be read."""


class UnknownCommand(ToricProbeError):
    """The command line named a command we don't have."""


class ConfigError(ToricProbeError):
    """The configuration file is missing or malformed."""


class UsageError(ToricProbeError):
    """The command line is malformed: a missing file, an unknown flag or a bad flag value."""
