"""Exception hierarchy.

``InvalidInput`` subclasses map to CLI exit code 2, ``NumericFailure``
subclasses to exit code 3.
"""

from .numeric import Overflow, ZeroDenominator


class HyperError(Exception):
    pass


class InvalidInput(HyperError, ValueError):
    pass


class NumericFailure(HyperError, ArithmeticError):
    pass


class InvalidSpec(InvalidInput):
    pass


class DegreeZeroArgument(InvalidSpec):
    pass


class PoleAtIndex(InvalidInput, ZeroDivisionError):
    def __init__(self, param, index):
        self.param = param
        self.index = tuple(index)
        super().__init__(
            f"denominator parameter {param} vanishes at multi-index {self.index}"
        )


class PoleWithinTruncation(InvalidInput, ZeroDivisionError):
    def __init__(self, report, order=None):
        self.report = report
        self.order = order
        where = "" if order is None else f" up to x^{order}"
        super().__init__(f"series has a pole{where}: {report.describe()}")


class PolarPrefactor(InvalidInput, ZeroDivisionError):
    pass


class UnknownIdentity(InvalidInput, KeyError):
    def __str__(self):
        return str(self.args[0]) if self.args else "unknown identity"


class SamplerExhausted(HyperError, RuntimeError):
    pass


class NoConvergence(NumericFailure):
    pass


__all__ = [
    "DegreeZeroArgument",
    "HyperError",
    "InvalidInput",
    "InvalidSpec",
    "NoConvergence",
    "NumericFailure",
    "Overflow",
    "PoleAtIndex",
    "PolarPrefactor",
    "PoleWithinTruncation",
    "SamplerExhausted",
    "UnknownIdentity",
    "ZeroDenominator",
]
