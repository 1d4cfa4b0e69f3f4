"""Exception hierarchy shared by every module."""

from __future__ import annotations


class PeriodCalcError(Exception):
    """Base class for all domain errors raised by critperiods."""


class NotACMType(PeriodCalcError):
    pass


class InvalidExtension(PeriodCalcError):
    pass


class InvalidHodgeData(PeriodCalcError):
    pass


class NotSelfDual(PeriodCalcError):
    pass


class ParityMismatch(PeriodCalcError):
    pass


class NotCritical(PeriodCalcError):
    pass


class NoCriticalValues(PeriodCalcError):
    pass


class MidpointDegenerate(PeriodCalcError):
    pass


class NotInTopInterval(PeriodCalcError):
    pass


class MiddleTypePresent(PeriodCalcError):
    pass


class ParityHypothesisFailed(PeriodCalcError):
    pass


class HypothesisFailed(PeriodCalcError):
    pass


class OutOfAutomorphicRange(PeriodCalcError):
    pass


class IncompatibleLift(PeriodCalcError):
    pass


class MissingSigma(PeriodCalcError):
    pass


class NotASubgroup(PeriodCalcError):
    pass


class PreconditionError(PeriodCalcError):
    pass
