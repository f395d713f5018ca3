"""Minimal SIP layer: URIs, messages, and the sensor annotation extension."""

from .annotation import SensorAnnotation, extract_sensor_annotation, format_coord
from .errors import (
    BadContentLength,
    BadUri,
    InvalidAnnotation,
    MalformedStartLine,
    MissingMandatoryHeader,
    SipError,
)
from .message import (
    METHODS,
    Headers,
    SipMessage,
    ViaInfo,
    format_via,
    make_response,
    parse_message,
    parse_via,
)
from .uri import NameAddr, SipUri

__all__ = [
    "BadContentLength",
    "BadUri",
    "Headers",
    "InvalidAnnotation",
    "METHODS",
    "MalformedStartLine",
    "MissingMandatoryHeader",
    "NameAddr",
    "SensorAnnotation",
    "SipError",
    "SipMessage",
    "SipUri",
    "ViaInfo",
    "extract_sensor_annotation",
    "format_coord",
    "format_via",
    "make_response",
    "parse_message",
    "parse_via",
]
