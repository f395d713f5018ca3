"""Parse and validation errors raised by the SIP layer."""

from __future__ import annotations


class SipError(Exception):
    """Base class for every error raised while handling SIP text."""


class MalformedStartLine(SipError):
    def __init__(self, line: str):
        super().__init__(f"malformed start line: {line!r}")
        self.line = line


class MissingMandatoryHeader(SipError):
    def __init__(self, name: str):
        super().__init__(f"missing mandatory header: {name}")
        self.name = name


class BadContentLength(SipError):
    def __init__(self, line: str):
        super().__init__(f"bad Content-Length: {line!r}")
        self.line = line


class BadUri(SipError):
    pass


class InvalidAnnotation(SipError):
    """Sensor annotation is present but incomplete or out of range."""
