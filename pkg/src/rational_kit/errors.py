"""Exception hierarchy shared by every module.

The CLI maps these onto exit codes: input errors exit 2, resource caps
exit 3.  Contract errors are programming mistakes on the caller side
(wrong kind of automaton, mismatched alphabets) and are reported as input
errors by the CLI as well.
"""


class RationalKitError(Exception):
    """Base class for all errors raised by this package."""

    exit_code = 2


class InputError(RationalKitError, ValueError):
    """Malformed user input: unknown symbol, syntax error, bad file."""

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            where += ": "
        super().__init__(where + message)


class ContractError(RationalKitError, ValueError):
    """An operation was called outside of its precondition."""


class ResourceError(RationalKitError, RuntimeError):
    """A configured size cap was exceeded.

    ``partial`` carries whatever was built before giving up (a state count,
    a partial trace), when the operation has something useful to report.
    """

    exit_code = 3

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial
