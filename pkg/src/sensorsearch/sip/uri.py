"""SIP URI and name-addr parsing for the message subset this stack speaks."""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import BadUri

# RFC 3261 §19.1.1: sip:user@host:port;param=value;param2
# We keep user/host/port plus an ordered parameter map; everything else
# (passwords, headers-in-URI, IPv6 literals) is out of scope here.


@dataclass
class SipUri:
    """A parsed ``sip:`` URI."""

    host: str
    user: str | None = None
    port: int | None = None
    params: dict[str, str | None] = field(default_factory=dict)
    scheme: str = "sip"

    @classmethod
    def parse(cls, text: str) -> SipUri:
        text = text.strip()
        if not text.lower().startswith("sip:"):
            raise BadUri(f"not a sip: URI: {text!r}")
        rest = text[4:]
        params: dict[str, str | None] = {}
        if ";" in rest:
            rest, _, param_text = rest.partition(";")
            for chunk in param_text.split(";"):
                chunk = chunk.strip()
                if not chunk:
                    continue
                if "=" in chunk:
                    name, _, value = chunk.partition("=")
                    params[name.strip()] = value.strip()
                else:
                    params[chunk] = None
        user: str | None = None
        if "@" in rest:
            user, _, rest = rest.rpartition("@")
            if not user:
                raise BadUri(f"empty user part: {text!r}")
        host, port = _split_host_port(rest, text)
        if not host:
            raise BadUri(f"empty host: {text!r}")
        return cls(host=host, user=user, port=port, params=params)

    def __str__(self) -> str:
        out = f"sip:{self.user}@{self.host}" if self.user else f"sip:{self.host}"
        if self.port is not None:
            out += f":{self.port}"
        for name, value in self.params.items():
            out += f";{name}" if value is None else f";{name}={value}"
        return out

    def without_user(self) -> SipUri:
        """The domain form of this URI (user part and params dropped)."""
        return SipUri(host=self.host, port=self.port)

    def base(self) -> SipUri:
        """User and host/port only; URI parameters dropped."""
        return SipUri(host=self.host, user=self.user, port=self.port)

    def __hash__(self) -> int:
        return hash(str(self))


def _split_host_port(text: str, original: str) -> tuple[str, int | None]:
    if ":" not in text:
        return text.strip(), None
    host, _, port_text = text.rpartition(":")
    try:
        port = int(port_text)
    except ValueError:
        raise BadUri(f"bad port in URI: {original!r}") from None
    if not 0 < port < 65536:
        raise BadUri(f"port out of range in URI: {original!r}")
    return host.strip(), port


@dataclass
class NameAddr:
    """A From/To/Contact style header value: ``[display] <uri>;param=value``.

    The figure corpus writes angle brackets with inner padding
    (``< sip:sensorA@hommel.com >``), so whitespace inside the brackets is
    tolerated on input and never emitted.
    """

    uri: SipUri
    display: str | None = None
    params: dict[str, str | None] = field(default_factory=dict)

    @classmethod
    def parse(cls, text: str) -> NameAddr:
        text = text.strip()
        display: str | None = None
        params: dict[str, str | None] = {}
        if "<" in text:
            before, _, rest = text.partition("<")
            uri_text, closed, after = rest.partition(">")
            if not closed:
                raise BadUri(f"unterminated angle bracket: {text!r}")
            display = before.strip().strip('"') or None
            uri = SipUri.parse(uri_text.strip())
            param_text = after.lstrip(";")
        else:
            # addr-spec form: header params follow the first semicolon
            uri_text, _, param_text = text.partition(";")
            uri = SipUri.parse(uri_text)
        for chunk in param_text.split(";"):
            chunk = chunk.strip()
            if not chunk:
                continue
            if "=" in chunk:
                name, _, value = chunk.partition("=")
                params[name.strip()] = value.strip()
            else:
                params[chunk] = None
        return cls(uri=uri, display=display, params=params)

    def __str__(self) -> str:
        out = f'"{self.display}" <{self.uri}>' if self.display else f"<{self.uri}>"
        for name, value in self.params.items():
            out += f";{name}" if value is None else f";{name}={value}"
        return out

    @property
    def tag(self) -> str | None:
        return self.params.get("tag")
