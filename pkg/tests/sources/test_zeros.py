import numpy as np
import pytest

from selberg.errors import DomainError, ZeroFileError
from selberg.sources import ZERO_DIR_ENV, load_zeros, zeros_for


def test_bundled_zeta_table(zeta_zeros):
    assert len(zeta_zeros) == 10
    assert zeta_zeros.rh_verified
    assert zeta_zeros.gammas[0] == pytest.approx(14.134725141734693)


def test_beta_gamma_mode(write_file):
    Z = load_zeros(write_file("z.txt", "# synthetic\n0.5 14.1\n0.9 20.0\n"))
    assert Z.betas.tolist() == [0.5, 0.9]
    assert not Z.rh_verified


@pytest.mark.parametrize(
    "content, line",
    [
        ("14.1\n0.5 20.0\n", 2),
        ("14.1\n21.0\n20.0\n", 3),
        ("0.5 14.1\n1.5 20.0\n", 2),
        ("14.1\nabc\n", 2),
        ("1 2 3\n", 1),
    ],
)
def test_malformed_tables(write_file, content, line):
    with pytest.raises(ZeroFileError) as excinfo:
        load_zeros(write_file("bad.txt", content))
    assert excinfo.value.line == line


def test_zero_directory_lookup(tmp_path, monkeypatch):
    (tmp_path / "zeta.txt").write_text("14.134725141734693\n", encoding="utf-8")
    monkeypatch.setenv(ZERO_DIR_ENV, str(tmp_path))
    assert np.allclose(zeros_for("zeta").gammas, [14.134725141734693])
    monkeypatch.delenv(ZERO_DIR_ENV)
    missing = zeros_for("zeta")
    assert len(missing) == 0 and missing.source == ""


def test_explicit_missing_table():
    with pytest.raises(DomainError):
        zeros_for("zeta", "/nonexistent/zeta.txt")
