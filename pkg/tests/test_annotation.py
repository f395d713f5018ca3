"""Sensor annotation extraction: Contact params, standalone headers, precedence."""

from __future__ import annotations

import pytest

from sensorsearch.sip import (
    InvalidAnnotation,
    SensorAnnotation,
    extract_sensor_annotation,
    format_coord,
    parse_message,
)

from support import fixture_path


def parse_fixture(name: str):
    return parse_message(fixture_path("messages", name).read_bytes())


def test_packed_standalone_form():
    msg = parse_fixture("third_party_register.sip")
    ann = extract_sensor_annotation(msg)
    assert ann == SensorAnnotation("temperature", 48.0, 2.0)


def test_contact_param_form():
    msg = parse_fixture("register_contact_annotation.sip")
    ann = extract_sensor_annotation(msg)
    assert ann == SensorAnnotation("temperature", 48.0, 2.0)


def test_contact_param_form_negative_coordinates():
    msg = parse_fixture("register_contact_annotation.sip")
    raw = msg.serialize().replace(
        b"sensor-type=temperature;latitude=48;longitude=2",
        b"sensor-type=humidity;latitude=-33.9;longitude=18.4",
    )
    ann = extract_sensor_annotation(parse_message(raw))
    assert ann == SensorAnnotation("humidity", -33.9, 18.4)


def test_plain_phone_register_has_no_annotation():
    msg = parse_fixture("register_plain_phone.sip")
    assert extract_sensor_annotation(msg) is None


def test_three_separate_standalone_headers():
    msg = parse_fixture("register_plain_phone.sip")
    msg.headers.add("Sensor-type", "pressure")
    msg.headers.add("Latitude", "50.1")
    msg.headers.add("Longitude", "8.6")
    assert extract_sensor_annotation(msg) == SensorAnnotation("pressure", 50.1, 8.6)


def test_standalone_wins_over_contact():
    msg = parse_fixture("register_contact_annotation.sip")
    msg.headers.add("Sensor-type", "audio; Latitude: 10; Longitude: 20")
    ann = extract_sensor_annotation(msg)
    assert ann == SensorAnnotation("audio", 10.0, 20.0)


def test_missing_coordinates_is_invalid():
    msg = parse_fixture("register_plain_phone.sip")
    msg.headers.add("Sensor-type", "temperature")
    with pytest.raises(InvalidAnnotation):
        extract_sensor_annotation(msg)


@pytest.mark.parametrize("lat,lon", [("91", "0"), ("-90.5", "0"), ("0", "181"), ("0", "-180.01")])
def test_out_of_range_coordinates(lat, lon):
    msg = parse_fixture("register_plain_phone.sip")
    msg.headers.add("Sensor-type", f"temperature; Latitude: {lat}; Longitude: {lon}")
    with pytest.raises(InvalidAnnotation):
        extract_sensor_annotation(msg)


def test_unparseable_coordinates():
    msg = parse_fixture("register_plain_phone.sip")
    msg.headers.add("Sensor-type", "temperature; Latitude: north; Longitude: 2")
    with pytest.raises(InvalidAnnotation):
        extract_sensor_annotation(msg)


def test_bad_type_token():
    with pytest.raises(InvalidAnnotation):
        SensorAnnotation("two words", 0.0, 0.0)
    with pytest.raises(InvalidAnnotation):
        SensorAnnotation("", 0.0, 0.0)


def test_extraction_is_deterministic():
    msg = parse_fixture("third_party_register.sip")
    assert extract_sensor_annotation(msg) == extract_sensor_annotation(msg)


def test_packed_value_round_trips():
    ann = SensorAnnotation("temperature", 48.0, 2.0)
    assert ann.packed_header_value() == "temperature; Latitude: 48; Longitude: 2"


def test_integer_coordinates_format_without_fraction():
    assert format_coord(48.0) == "48"
    assert format_coord(-33.9) == "-33.9"
