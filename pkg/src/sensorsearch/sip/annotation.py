"""The sensor annotation extension: type and position carried in signaling.

Sensors attach ``sensor-type``, ``latitude``, and ``longitude`` parameters to
the Contact header of their REGISTER.  The registrar re-emits the annotation
toward application servers as standalone headers, packed into a single line::

    Sensor-type: temperature; Latitude: 48; Longitude: 2

The extractor accepts both forms plus three separate standalone headers;
standalone headers win when a message carries both forms.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InvalidAnnotation
from .message import SipMessage


@dataclass(frozen=True)
class SensorAnnotation:
    sensor_type: str
    latitude: float
    longitude: float

    def __post_init__(self) -> None:
        if not self.sensor_type or any(c.isspace() or c == ";" for c in self.sensor_type):
            raise InvalidAnnotation(f"bad sensor type token: {self.sensor_type!r}")
        if not -90.0 <= self.latitude <= 90.0:
            raise InvalidAnnotation(f"latitude out of range: {self.latitude}")
        if not -180.0 <= self.longitude <= 180.0:
            raise InvalidAnnotation(f"longitude out of range: {self.longitude}")

    def packed_header_value(self) -> str:
        """The standalone one-line form emitted in third-party REGISTERs."""
        return (
            f"{self.sensor_type}; Latitude: {format_coord(self.latitude)};"
            f" Longitude: {format_coord(self.longitude)}"
        )

    def contact_params(self) -> dict[str, str]:
        return {
            "sensor-type": self.sensor_type,
            "latitude": format_coord(self.latitude),
            "longitude": format_coord(self.longitude),
        }


def format_coord(value: float) -> str:
    """Decimal degrees with the fraction dropped when integral (48.0 -> "48")."""
    return f"{value:g}"


def extract_sensor_annotation(msg: SipMessage) -> SensorAnnotation | None:
    """Pull the sensor annotation out of a parsed message, if any.

    Returns ``None`` when the message carries no annotation at all.  Raises
    :class:`InvalidAnnotation` when a sensor type is present but the
    coordinates are missing, unparseable, or out of range — the caller
    rejects such a message with a 400.
    """
    standalone = _from_standalone_headers(msg)
    if standalone is not None:
        return standalone
    return _from_contact_params(msg)


def _from_standalone_headers(msg: SipMessage) -> SensorAnnotation | None:
    type_value = msg.headers.get("Sensor-type")
    if type_value is None:
        return None
    sensor_type = type_value
    latitude = msg.headers.get("Latitude")
    longitude = msg.headers.get("Longitude")
    if ";" in type_value:
        # packed form: "temperature; Latitude: 48; Longitude: 2"
        first, *rest = type_value.split(";")
        sensor_type = first.strip()
        for chunk in rest:
            name, colon, value = chunk.partition(":")
            if not colon:
                raise InvalidAnnotation(f"bad packed annotation segment: {chunk!r}")
            name = name.strip().lower()
            if name == "latitude":
                latitude = value.strip()
            elif name == "longitude":
                longitude = value.strip()
            else:
                raise InvalidAnnotation(f"unknown packed annotation field: {name!r}")
    return _build(sensor_type.strip(), latitude, longitude)


def _from_contact_params(msg: SipMessage) -> SensorAnnotation | None:
    contact = msg.contact
    if contact is None:
        return None
    params = {name.lower(): value for name, value in contact.params.items()}
    if "sensor-type" not in params:
        return None
    return _build(
        (params.get("sensor-type") or "").strip(),
        params.get("latitude"),
        params.get("longitude"),
    )


def _build(sensor_type: str, latitude: str | None, longitude: str | None) -> SensorAnnotation:
    if latitude is None or longitude is None:
        raise InvalidAnnotation(
            f"sensor-type {sensor_type!r} present but coordinates missing"
        )
    try:
        lat = float(latitude)
        lon = float(longitude)
    except ValueError:
        raise InvalidAnnotation(
            f"unparseable coordinates: {latitude!r}, {longitude!r}"
        ) from None
    return SensorAnnotation(sensor_type=sensor_type, latitude=lat, longitude=lon)
