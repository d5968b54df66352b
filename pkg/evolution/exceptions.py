class EvolutionError(Exception):
    """Base class for errors raised by the evolution app."""


class ConfigurationError(EvolutionError, ValueError):
    """An experiment, population or problem was configured with values that cannot work."""


class InvalidStateError(EvolutionError, RuntimeError):
    """The engine reached a state that its invariants rule out."""


class InstanceFormatError(EvolutionError, ValueError):
    """
    A problem instance could not be parsed or failed validation.

    `line` is the 1-based line number of the offending input line, if known.
    """
    def __init__(self, message, line=None):
        self.message = message
        self.line = line
        super().__init__(f'line {line}: {message}' if line is not None else message)


class UndefinedMetricError(EvolutionError, ArithmeticError):
    """A comparison metric is undefined for the given values (e.g. division by a zero baseline)."""


class InstanceTooLargeError(EvolutionError, ValueError):
    """The exhaustive oracle refuses instances beyond its enumeration cutoff."""
