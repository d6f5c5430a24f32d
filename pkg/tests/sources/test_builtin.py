import pytest

from selberg.errors import DomainError
from selberg.sources import lfunction_slug, resolve_lfunction


def test_zeta_metadata():
    L = resolve_lfunction("zeta")
    assert L.kind == "zeta" and L.has_pole_at_one
    assert L.sigma_L == 0.5
    assert L.b(3, 2) == 0.5


def test_dirichlet_names():
    L = resolve_lfunction("dirichlet:-4")
    assert L.kind == "dirichlet" and not L.has_pole_at_one
    assert L.sigma_L == pytest.approx(0.9375)
    assert resolve_lfunction("dirichlet:-4", assume_gdh=True).sigma_L == 0.5
    assert L.b(3, 1) == pytest.approx(-1.0)
    assert L.b(3, 2) == pytest.approx(0.5)
    assert lfunction_slug(resolve_lfunction("dirichlet:5:2")) == "dirichlet_5.2"


@pytest.mark.parametrize(
    "name", ["dirichlet:4:1", "dirichlet:15:4", "dirichlet:x", "dirichlet:1:2:3", "no-such-L"]
)
def test_unresolvable_names(name):
    with pytest.raises(DomainError):
        resolve_lfunction(name)


def test_coefficient_file_by_path(write_file):
    path = write_file("toy.txt", "# name=toy\n2 1 0.5 0\n")
    assert resolve_lfunction(path).name == "toy"
