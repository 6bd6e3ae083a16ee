"""Exception hierarchy shared by all assumekit modules."""


class AssumeKitError(Exception):
    """Base class for all errors raised by this package."""


class FormatError(AssumeKitError):
    """Malformed input: game files, DIMACS files, lasso-word strings."""


class ValidationError(AssumeKitError):
    """A structural invariant of a game, objective or transducer is violated."""


class StrategyError(AssumeKitError):
    """A strategy is partial, maps to a non-successor, or owns foreign states."""


class GuardError(AssumeKitError):
    """An exhaustive oracle was called on an instance above its size guard."""


class UnsatisfiableError(AssumeKitError):
    """No environment assumption can help: the initial state is not even
    cooperatively winning."""


class NoFairAssumptionError(AssumeKitError):
    """The initial state is live but no strongly-fair edge set is sufficient."""


class WitnessError(AssumeKitError):
    """No environment witness exists under the requested assumption."""


class InternalInvariantError(AssumeKitError):
    """A post-hoc re-verification failed; indicates a bug, not bad input."""
