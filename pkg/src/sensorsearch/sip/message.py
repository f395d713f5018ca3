"""SIP message parsing, validation, and serialization.

The wire subset is what a registrar, presence server, and simple user agents
exchange over UDP: one complete message per datagram, CRLF line endings on
output (bare LF tolerated on input), no multipart bodies, no compact header
forms.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field

from .errors import BadContentLength, MalformedStartLine, MissingMandatoryHeader
from .uri import NameAddr, SipUri

CRLF = "\r\n"
SIP_VERSION = "SIP/2.0"

METHODS = ("REGISTER", "PUBLISH", "SUBSCRIBE", "NOTIFY", "INVITE", "ACK", "BYE", "INFO")

# RFC 3261 §7.3.1: header names are case-insensitive; we store the canonical
# capitalization.  "Sensor-type" (not "Sensor-Type") matches the annotation
# extension as sensors emit it.
_CANONICAL = {
    name.lower(): name
    for name in (
        "Via",
        "From",
        "To",
        "Contact",
        "Call-ID",
        "CSeq",
        "Max-Forwards",
        "Expires",
        "Min-Expires",
        "Content-Length",
        "Content-Type",
        "Event",
        "Subscription-State",
        "SIP-ETag",
        "SIP-If-Match",
        "Sensor-type",
        "Latitude",
        "Longitude",
        "Allow",
        "Route",
        "Record-Route",
        "User-Agent",
    )
}

MANDATORY_HEADERS = ("Via", "From", "To", "Call-ID", "CSeq")


def canonical_name(name: str) -> str:
    return _CANONICAL.get(name.lower(), name)


class Headers:
    """Ordered multimap of header fields with case-insensitive lookup."""

    __slots__ = ("_items",)

    def __init__(self, items: list[tuple[str, str]] | None = None):
        self._items: list[tuple[str, str]] = []
        for name, value in items or []:
            self.add(name, value)

    def add(self, name: str, value: str) -> None:
        self._items.append((canonical_name(name), value))

    def get(self, name: str) -> str | None:
        lower = name.lower()
        for key, value in self._items:
            if key.lower() == lower:
                return value
        return None

    def get_all(self, name: str) -> list[str]:
        lower = name.lower()
        return [value for key, value in self._items if key.lower() == lower]

    def replace(self, name: str, value: str) -> None:
        """Set the first occurrence of ``name`` to ``value``, appending if absent."""
        lower = name.lower()
        for i, (key, _) in enumerate(self._items):
            if key.lower() == lower:
                self._items[i] = (key, value)
                return
        self.add(name, value)

    def remove(self, name: str) -> None:
        lower = name.lower()
        self._items = [(k, v) for k, v in self._items if k.lower() != lower]

    def __contains__(self, name: str) -> bool:
        return self.get(name) is not None

    def __iter__(self):
        return iter(self._items)

    def __len__(self) -> int:
        return len(self._items)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Headers) and self._items == other._items

    def __repr__(self) -> str:
        return f"Headers({self._items!r})"

    def copy(self) -> Headers:
        clone = Headers()
        clone._items = list(self._items)
        return clone


@dataclass
class SipMessage:
    """One parsed SIP request or response."""

    method: str | None = None
    request_uri: SipUri | None = None
    status_code: int | None = None
    reason: str | None = None
    headers: Headers = field(default_factory=Headers)
    body: bytes = b""

    @property
    def is_request(self) -> bool:
        return self.method is not None

    @property
    def is_response(self) -> bool:
        return self.status_code is not None

    @property
    def call_id(self) -> str:
        value = self.headers.get("Call-ID")
        if value is None:
            raise MissingMandatoryHeader("Call-ID")
        return value.strip()

    @property
    def cseq(self) -> tuple[int, str]:
        value = self.headers.get("CSeq")
        if value is None:
            raise MissingMandatoryHeader("CSeq")
        parts = value.split()
        if len(parts) != 2 or not parts[0].isdigit():
            raise MalformedStartLine(f"CSeq: {value}")
        return int(parts[0]), parts[1]

    @property
    def expires(self) -> int | None:
        value = self.headers.get("Expires")
        if value is None:
            return None
        return int(value.strip())

    @property
    def content_length(self) -> int:
        return len(self.body)

    @property
    def from_addr(self) -> NameAddr:
        return NameAddr.parse(self.headers.get("From") or "")

    @property
    def to_addr(self) -> NameAddr:
        return NameAddr.parse(self.headers.get("To") or "")

    @property
    def contact(self) -> NameAddr | None:
        value = self.headers.get("Contact")
        return NameAddr.parse(value) if value is not None else None

    @property
    def event(self) -> str | None:
        value = self.headers.get("Event")
        if value is None:
            return None
        return value.partition(";")[0].strip()

    def start_line(self) -> str:
        if self.is_request:
            return f"{self.method} {self.request_uri} {SIP_VERSION}"
        return f"{SIP_VERSION} {self.status_code} {self.reason}"

    def summary(self) -> str:
        """Compact one-line description used by trace logs."""
        if self.is_request:
            return f"{self.method} {self.request_uri}"
        return f"{self.status_code} {self.reason} ({self.cseq[1]})"

    def serialize(self) -> bytes:
        """Encode to wire form, forcing Content-Length to the body length."""
        lines = [self.start_line()]
        wrote_length = False
        for name, value in self.headers:
            if name.lower() == "content-length":
                value = str(len(self.body))
                wrote_length = True
            lines.append(f"{name}: {value}")
        if not wrote_length:
            lines.append(f"Content-Length: {len(self.body)}")
        head = CRLF.join(lines) + CRLF + CRLF
        return head.encode("utf-8") + self.body


def parse_message(raw: bytes) -> SipMessage:
    """Parse one complete datagram into a :class:`SipMessage`.

    Raises :class:`MalformedStartLine`, :class:`MissingMandatoryHeader`,
    :class:`BadContentLength`, or :class:`BadUri`, each naming the offending
    line.
    """
    text = raw.decode("utf-8", errors="replace")
    head, sep, body_text = text.partition("\r\n\r\n")
    if not sep:
        head, sep, body_text = text.partition("\n\n")
    body = body_text.encode("utf-8")
    lines = head.replace("\r\n", "\n").split("\n")
    msg = SipMessage(headers=Headers())
    _parse_start_line(lines[0], msg)

    # RFC 3261 §7.3.1: a line starting with whitespace continues the
    # previous header value (folding).
    unfolded: list[str] = []
    for line in lines[1:]:
        if not line.strip():
            continue
        if line[0] in " \t" and unfolded:
            unfolded[-1] += " " + line.strip()
        else:
            unfolded.append(line)

    declared_length: int | None = None
    for line in unfolded:
        name, colon, value = line.partition(":")
        if not colon or not name.strip():
            raise MalformedStartLine(line)
        name = name.strip()
        value = value.strip()
        if name.lower() == "content-length":
            if not value.isdigit():
                raise BadContentLength(line)
            declared_length = int(value)
        msg.headers.add(name, value)

    for name in MANDATORY_HEADERS:
        if name not in msg.headers:
            raise MissingMandatoryHeader(name)
    msg.cseq  # validates format

    if declared_length is not None and declared_length != len(body):
        raise BadContentLength(
            f"Content-Length: {declared_length} but body has {len(body)} bytes"
        )
    msg.body = body
    return msg


def _parse_start_line(line: str, msg: SipMessage) -> None:
    parts = line.split(" ", 2)
    if line.startswith(SIP_VERSION):
        if len(parts) < 3 or not parts[1].isdigit():
            raise MalformedStartLine(line)
        code = int(parts[1])
        if not 100 <= code <= 699:
            raise MalformedStartLine(line)
        msg.status_code = code
        msg.reason = parts[2]
    else:
        if len(parts) != 3 or parts[2] != SIP_VERSION:
            raise MalformedStartLine(line)
        if parts[0] not in METHODS:
            raise MalformedStartLine(line)
        msg.method = parts[0]
        msg.request_uri = SipUri.parse(parts[1])


def make_response(
    req: SipMessage, status: int, reason: str, *, body: bytes = b"", to_tag: str | None = None
) -> SipMessage:
    """Build a response mirroring the request's dialog identifiers.

    Via, From, To, Call-ID, and CSeq are copied verbatim (RFC 3261 §8.2.6.2).
    A to-tag is added for final responses when the request carried none; the
    default tag is derived from the dialog identifiers so that replies are
    reproducible run to run.
    """
    if not req.is_request:
        raise ValueError("make_response needs a request")
    resp = SipMessage(status_code=status, reason=reason, body=body)
    for value in req.headers.get_all("Via"):
        resp.headers.add("Via", value)
    resp.headers.add("From", req.headers.get("From") or "")
    to_value = req.headers.get("To") or ""
    if status >= 200 and ";tag=" not in to_value.replace(" ", ""):
        if to_tag is None:
            seed = f"{req.headers.get('Call-ID')}|{req.headers.get('CSeq')}|{status}"
            to_tag = hashlib.sha256(seed.encode()).hexdigest()[:10]
        to_value = f"{to_value};tag={to_tag}"
    resp.headers.add("To", to_value)
    resp.headers.add("Call-ID", req.headers.get("Call-ID") or "")
    resp.headers.add("CSeq", req.headers.get("CSeq") or "")
    return resp


@dataclass
class ViaInfo:
    """The transport, sent-by address, and parameters of one Via value."""

    protocol: str
    host: str
    port: int | None
    params: dict[str, str | None]

    @property
    def sent_by(self) -> tuple[str, int]:
        return self.host, self.port if self.port is not None else 5060

    def __str__(self) -> str:
        out = f"{self.protocol} {self.host}"
        if self.port is not None:
            out += f":{self.port}"
        for name, value in self.params.items():
            out += f";{name}" if value is None else f";{name}={value}"
        return out


def parse_via(value: str) -> ViaInfo:
    # RFC 3261 §20.42: "SIP/2.0/UDP host:port;branch=..."
    first, *rest = value.split(";")
    parts = first.split()
    if len(parts) != 2:
        raise MalformedStartLine(f"Via: {value}")
    protocol = parts[0]
    host, port = parts[1], None
    if ":" in host:
        host, _, port_text = host.rpartition(":")
        port = int(port_text)
    params: dict[str, str | None] = {}
    for chunk in rest:
        chunk = chunk.strip()
        if not chunk:
            continue
        if "=" in chunk:
            name, _, pvalue = chunk.partition("=")
            params[name.strip()] = pvalue.strip()
        else:
            params[chunk] = None
    return ViaInfo(protocol=protocol, host=host, port=port, params=params)


def format_via(host: str, port: int, branch: str) -> str:
    return f"SIP/2.0/UDP {host}:{port};branch={branch}"
