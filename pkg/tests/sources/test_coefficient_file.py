import pytest

from selberg.errors import CoefficientFileError
from selberg.sources import load_coefficient_file


def test_load_custom_lfunction(write_file):
    text = "# degree=1 theta=0 name=toy\n2 1 0.5 0\n3 1 -0.5 0.25\n\n2 2 0.25 0\n"
    path = write_file("toy.txt", text)
    L = load_coefficient_file(path)
    assert L.kind == "custom" and L.name == "toy"
    assert L.coefficient_bound == 3
    assert L.b(2, 1) == 0.5 and L.b(3, 1) == -0.5 + 0.25j
    assert L.b(5, 1) == 0 and L.b(3, 2) == 0
    assert L.sigma_L == pytest.approx(0.9375)


@pytest.mark.parametrize(
    "content, line",
    [
        ("2 1 0.5 0\n4 1 1 0\n", 2),
        ("# flavour=sweet\n2 1 1 0\n", 1),
        ("2 1 0.5 0\n3 1 0.5\n", 2),
        ("2 1 0.5 0\n2 1 0.5 0\n", 2),
        ("2 1 a 0\n", 1),
        ("# name=empty\n", 0),
    ],
)
def test_errors_carry_line_numbers(write_file, content, line):
    with pytest.raises(CoefficientFileError) as excinfo:
        load_coefficient_file(write_file("bad.txt", content))
    assert excinfo.value.line == line
