"""Exception hierarchy.

Every error raised by the package derives from :class:`FiltmultError` and
carries an ``exit_code`` used by the command-line front end:

* 2 -- malformed or inconsistent input,
* 3 -- a mathematical precondition does not hold,
* 4 -- the answer could not be decided within the configured caps.
"""

from __future__ import annotations


class FiltmultError(Exception):
    exit_code = 1


class InputError(FiltmultError, ValueError):
    exit_code = 2


class DimensionMismatch(InputError):
    pass


class NonPositiveInput(InputError):
    pass


class InexactInput(InputError):
    pass


class SchemaError(InputError):
    pass


class PreconditionError(FiltmultError):
    exit_code = 3


class NotPrimary(PreconditionError):
    pass


class NotNested(PreconditionError):
    pass


class ZeroVolume(PreconditionError):
    pass


class TruncationTooLow(PreconditionError):
    pass


class OutsideEnvelope(PreconditionError):
    pass


class BoundaryAmbiguity(PreconditionError):
    pass


class NotEquality(PreconditionError):
    pass


class UndecidedError(FiltmultError):
    exit_code = 4


class PrecisionExhausted(UndecidedError):
    pass


class RationalityUndecided(UndecidedError):
    pass


class CapReached(UndecidedError):
    pass


class IllConditioned(UndecidedError):
    pass


class NoStabilization(UndecidedError):
    pass
