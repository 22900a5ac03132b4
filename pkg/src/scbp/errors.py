"""Exception hierarchy shared by all scbp modules."""


class ScbpError(Exception):
    """Base class for every error raised by this package."""


class InvalidInputError(ScbpError, ValueError):
    """Argument values are unusable (empty, non-finite, wrong shape)."""


class InvalidDimensionError(InvalidInputError):
    """Array dimensions are inconsistent with each other."""


class ConfigError(ScbpError, ValueError):
    """A configuration value or file is invalid."""


class ParseError(ScbpError, ValueError):
    """A text file could not be parsed.

    ``lineno`` is 1-based, or ``None`` when the problem is not tied to a line.
    """

    def __init__(self, message, path=None, lineno=None):
        self.path = path
        self.lineno = lineno
        where = ""
        if path is not None:
            where = f"{path}"
            if lineno is not None:
                where += f":{lineno}"
            where += ": "
        elif lineno is not None:
            where = f"line {lineno}: "
        super().__init__(where + message)


class FormatError(ScbpError, ValueError):
    """An audio file uses an unsupported container or sample format."""


class UnsupportedSizeError(ScbpError, ValueError):
    """Problem too large for the exhaustive oracle."""


class UndefinedMetricError(ScbpError, ArithmeticError):
    """A metric is undefined for the given input (e.g. zero reference energy)."""
