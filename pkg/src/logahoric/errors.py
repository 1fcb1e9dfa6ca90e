"""Exception classes shared across the package."""


class LogahoricError(Exception):
    """Base class for all errors raised by this package."""


class VariableMismatch(LogahoricError):
    pass


class NonIntegralExponent(LogahoricError):
    """A nonzero coefficient sits at a t-exponent not divisible by r."""

    def __init__(self, exponent, r, label=None):
        self.exponent = exponent
        self.r = r
        self.label = label
        where = f" in {label}" if label is not None else ""
        super().__init__(f"exponent {exponent} not divisible by r={r}{where}")


class TruncationExhausted(LogahoricError):
    """A coefficient above the known truncation order was required."""

    def __init__(self, exponent, truncation):
        self.exponent = exponent
        self.truncation = truncation
        super().__init__(
            f"coefficient of exponent {exponent} requested but series is only known up to {truncation}"
        )


class RootNotInSystem(LogahoricError):
    pass


class StructureMismatch(LogahoricError):
    """Elements from different root systems or variables were combined."""


class NotParahoric(LogahoricError):
    pass


class ResidueConditionViolated(LogahoricError):
    pass


class ParabolicConditionViolated(LogahoricError):
    pass


class InvalidDatum(LogahoricError):
    pass


class InvalidDecomposition(LogahoricError):
    pass


class ParseError(LogahoricError):
    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        loc = ""
        if line is not None:
            loc = f"line {line}" + (f", column {column}" if column is not None else "") + ": "
        super().__init__(loc + message)
