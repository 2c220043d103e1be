"""Exception hierarchy shared by all coxroot modules.

Every domain failure raises a subclass of CoxrootError.  The class name
doubles as the stable error code used by the CLI (``--json`` output and
stderr) and by the HTTP service (the ``code`` field of error bodies), so
renaming a class here is a breaking interface change.
"""


class CoxrootError(Exception):
    """Base class for all domain errors raised by this package."""

    @property
    def code(self):
        return type(self).__name__

    @property
    def detail(self):
        return str(self)


# ---------------------------------------------------------------- graphs

class ParseError(CoxrootError):
    """An entry could not be parsed as a scalar value."""


class ValueSyntaxError(ParseError):
    """A scalar string is syntactically malformed (e.g. ``-1/0``)."""


class DiagonalNotTwo(CoxrootError):
    """A diagonal matrix entry differs from 2."""


class PositiveOffDiagonal(CoxrootError):
    """An off-diagonal matrix entry is positive."""


class AsymmetricZeroPair(CoxrootError):
    """Exactly one of a_ij, a_ji is zero."""


class UnrecognizedBond(CoxrootError):
    """An off-diagonal product in (0,4) matches no admissible bond order."""


class NotOddNeighbors(CoxrootError):
    """K-values are only defined across odd bonds."""


class InvalidPath(CoxrootError):
    """A node sequence is not a path of odd neighbors."""


class NotUnitalONCyclic(CoxrootError):
    """f is undefined on a component with a non-unital simple ON-cycle."""


class NotConnected(CoxrootError):
    """The operation requires an (ordinarily) connected graph."""


# -------------------------------------------------------- representation

class NoEdge(CoxrootError):
    """The node pair is not adjacent."""


class InfiniteBond(CoxrootError):
    """The operation requires a finite bond order."""


# ----------------------------------------------------------------- roots

class LimitExceeded(CoxrootError):
    """Root enumeration hit max_count; carries the partial set."""

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


class NotFinite(CoxrootError):
    """Root enumeration did not exhaust, but exhaustion was required."""


class InfiniteInversionSet(CoxrootError):
    """Some letter of the word lies in a non-unital ON-component."""


class NegativeRoot(CoxrootError):
    """The operation is defined on positive roots only."""


# ------------------------------------------------------------------ game

class IllegalUserMove(CoxrootError):
    """A user-supplied firing sequence fired a non-positive node."""

    def __init__(self, message, step=None, node=None):
        super().__init__(message)
        self.step = step
        self.node = node


# ------------------------------------------------------------- documents

class IoError(CoxrootError):
    """A graph file could not be read."""


class JsonError(CoxrootError):
    """A graph file is not valid JSON or misses required structure."""
