"""Exception hierarchy for the package.

Grouped so the command-line layer can map whole families to exit codes:
config problems, solver-domain problems (unreachable or out-of-range
targets) and iteration failures are distinct categories.
"""


class ThermoshiftError(Exception):
    """Base class for all errors raised by this package."""


# --- shift-space construction -------------------------------------------------

class SftError(ThermoshiftError):
    """Invalid subshift-of-finite-type definition."""


class NotSquareError(SftError):
    """Transition matrix is not square or does not match the alphabet size."""


class StrandedSymbolError(SftError):
    """Some symbol has no successor or no predecessor."""


class NotPrimitiveError(SftError):
    """No power of the transition matrix up to the Wielandt bound is positive."""


class BlockLengthError(ThermoshiftError):
    """Requested block length is not a positive integer."""


# --- potentials ---------------------------------------------------------------

class MismatchedSystemError(ThermoshiftError):
    """Operands are defined over different subshifts."""


class NoSelfLoopError(ThermoshiftError):
    """The requested symbol is not a fixed point of the shift."""


class WordTooShortError(ThermoshiftError):
    """Word does not contain enough windows for the requested orbit sum."""


class ValidationError(ThermoshiftError):
    """A value table or configuration entry violates its contract."""


class ParseError(ValidationError):
    """Configuration file is not well-formed."""


# --- numerics -----------------------------------------------------------------

class ConvergenceError(ThermoshiftError):
    """Iteration budget exhausted before reaching the requested tolerance."""


class CheckFailedError(ThermoshiftError):
    """A numerical consistency check did not hold at its tolerance."""


class MonotonicityError(CheckFailedError):
    """A quantity that must be monotone along a parameter sweep was not."""


# --- solvers ------------------------------------------------------------------

class SolveError(ThermoshiftError):
    """Base class for intermediate-value solver failures."""


class TargetOutOfRangeError(SolveError):
    """Requested target lies outside the attainable interval."""


class AsymptoteUnreachableError(SolveError):
    """Target is only approached in the infinite-parameter limit."""


class NonUniqueGroundStateError(SolveError):
    """Scan exhausted and the ground state is not unique, so the target
    cannot be certified reachable."""
