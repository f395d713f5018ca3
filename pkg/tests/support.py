"""Shared test helpers: random SIP message generation and fixture access."""

from __future__ import annotations

import random
import string

from sensorsearch.resources import fixture_path, fixtures_root
from sensorsearch.sip import Headers, SipMessage, SipUri

__all__ = ["fixture_path", "fixtures_root", "random_message", "random_request", "random_uri"]

_METHODS = ("REGISTER", "PUBLISH", "SUBSCRIBE", "NOTIFY", "INVITE", "ACK", "BYE", "INFO")
_HOSTS = ("hommel.com", "example.net", "sensors.example.org", "10.1.2.3")
_EXTRA_HEADERS = ("Subject", "User-Agent", "X-Trace", "Allow", "Min-Expires")


def _token(rng: random.Random, n: int = 8) -> str:
    return "".join(rng.choices(string.ascii_lowercase + string.digits, k=n))


def random_uri(rng: random.Random, *, with_params: bool = True) -> SipUri:
    uri = SipUri(
        host=rng.choice(_HOSTS),
        user=_token(rng, 6) if rng.random() < 0.7 else None,
        port=rng.choice([None, 5060, 5070, 15060]),
    )
    if with_params and rng.random() < 0.3:
        uri.params["transport"] = "udp"
    return uri


def _mandatory_headers(rng: random.Random, method: str) -> Headers:
    headers = Headers()
    headers.add(
        "Via", f"SIP/2.0/UDP {rng.choice(_HOSTS)}:5060;branch=z9hG4bK{_token(rng)}"
    )
    headers.add("From", f"<{random_uri(rng, with_params=False)}>;tag={_token(rng, 5)}")
    to_tag = f";tag={_token(rng, 5)}" if rng.random() < 0.5 else ""
    headers.add("To", f"<{random_uri(rng, with_params=False)}>{to_tag}")
    headers.add("Call-ID", _token(rng, 12))
    headers.add("CSeq", f"{rng.randrange(1, 10_000)} {method}")
    return headers


def random_request(rng: random.Random) -> SipMessage:
    method = rng.choice(_METHODS)
    msg = SipMessage(
        method=method,
        request_uri=random_uri(rng),
        headers=_mandatory_headers(rng, method),
    )
    msg.headers.add("Max-Forwards", "70")
    if rng.random() < 0.4:
        msg.headers.add("Contact", f"<{random_uri(rng, with_params=False)}>;expires=3600")
    if rng.random() < 0.3:
        msg.headers.add("Sensor-type", rng.choice(["temperature", "camera", "humidity"]))
        msg.headers.add("Latitude", str(rng.randrange(-90, 91)))
        msg.headers.add("Longitude", str(rng.randrange(-180, 181)))
    for _ in range(rng.randrange(0, 3)):
        msg.headers.add(rng.choice(_EXTRA_HEADERS), _token(rng, 10))
    if rng.random() < 0.3:
        msg.body = _token(rng, rng.randrange(1, 60)).encode()
        msg.headers.add("Content-Type", "text/plain")
    msg.headers.add("Content-Length", str(len(msg.body)))
    return msg


def random_response(rng: random.Random) -> SipMessage:
    method = rng.choice(_METHODS)
    status, reason = rng.choice(
        [(100, "Trying"), (200, "OK"), (202, "Accepted"), (404, "Not Found"), (486, "Busy Here")]
    )
    msg = SipMessage(
        status_code=status, reason=reason, headers=_mandatory_headers(rng, method)
    )
    if rng.random() < 0.3:
        msg.body = _token(rng, rng.randrange(1, 40)).encode()
    msg.headers.add("Content-Length", str(len(msg.body)))
    return msg


def random_message(rng: random.Random) -> SipMessage:
    return random_request(rng) if rng.random() < 0.7 else random_response(rng)
