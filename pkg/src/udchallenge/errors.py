"""Exception hierarchy shared by the toolkit.

The CLI maps :class:`ParseError` to exit status 1 and :class:`DataError`
(and subclasses) to exit status 2.
"""


class UDChallengeError(Exception):
    pass


class ParseError(UDChallengeError, ValueError):
    """Malformed input text. ``line`` is 1-based when known."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class DataError(UDChallengeError):
    pass


class ValidationError(DataError, ValueError):
    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class PairingError(DataError, ValueError):
    def __init__(self, message, offenders=()):
        super().__init__(message)
        self.offenders = list(offenders)


class MissingSegmentError(DataError, KeyError):
    def __init__(self, message, sentence_id=None, set_name=None):
        super().__init__(message)
        self.sentence_id = sentence_id
        self.set_name = set_name

    def __str__(self):
        return self.args[0]
