import pytest

from selberg.utils import (
    format_complex,
    parse_complex,
    parse_complex_list,
    parse_floats,
    parse_range,
)


@pytest.mark.parametrize(
    "text, expected",
    [
        ("2.5+0i", 2.5 + 0j),
        ("0.85-0.5i", 0.85 - 0.5j),
        ("3", 3 + 0j),
        ("2i", 2j),
        ("-1e-3+1e3i", -1e-3 + 1e3j),
    ],
)
def test_parse_complex(text, expected):
    assert parse_complex(text) == expected


@pytest.mark.parametrize("text", ["", "1 + 2i", "1+2ii", "abc", "1+2x"])
def test_parse_complex_rejects(text):
    with pytest.raises(ValueError):
        parse_complex(text)


def test_format_complex_parses_back():
    for z in (0.75 + 14.5j, -2 - 0.125j):
        assert parse_complex(format_complex(z)) == z


def test_parse_lists_and_ranges():
    assert parse_complex_list("0.8,0.85+0.5i") == [0.8 + 0j, 0.85 + 0.5j]
    assert parse_floats("0.85,0,0.02", 3) == (0.85, 0.0, 0.02)
    assert parse_range("1000:100000") == (1000.0, 100000.0)
    with pytest.raises(ValueError):
        parse_floats("1,2", 3)
    with pytest.raises(ValueError):
        parse_range("5:1")
