"""Exception hierarchy shared by every module."""

import time


class SepregError(Exception):
    """Base class for all errors raised by this package."""


class LimitExceeded(SepregError):
    """A search or construction hit a configured bound; the answer is unknown."""


class CapExceeded(LimitExceeded):
    def __init__(self, what, cap):
        super().__init__(f"{what} exceeded cap of {cap}")
        self.what = what
        self.cap = cap


class DeadlineExceeded(LimitExceeded):
    def __init__(self, timeout_ms):
        super().__init__(f"timeout of {timeout_ms} ms exceeded")
        self.timeout_ms = timeout_ms


class EmptyLanguage(SepregError, ValueError):
    pass


class OverlappingInputs(SepregError, ValueError):
    def __init__(self, word):
        super().__init__(f"word {word!r} belongs to both languages")
        self.word = word


class ParseError(SepregError, ValueError):
    """Malformed textual input (regex or automaton file)."""


class RegexSyntaxError(ParseError):
    def __init__(self, message, offset):
        super().__init__(f"{message} at offset {offset}")
        self.offset = offset


class NestedEmptyError(RegexSyntaxError):
    def __init__(self, offset):
        super().__init__("'#' (empty language) is only allowed as the whole expression", offset)


class FormatError(ParseError):
    def __init__(self, message, line):
        super().__init__(f"line {line}: {message}")
        self.line = line


class Deadline:
    """Cooperative wall-clock deadline checked inside long-running loops."""

    def __init__(self, timeout_ms=None):
        self.timeout_ms = timeout_ms
        self._end = None if timeout_ms is None else time.monotonic() + timeout_ms / 1000.0

    def check(self):
        if self._end is not None and time.monotonic() > self._end:
            raise DeadlineExceeded(self.timeout_ms)


NO_DEADLINE = Deadline()
