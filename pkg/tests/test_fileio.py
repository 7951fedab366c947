import numpy as np
import pytest

from qjsd.errors import QJSDError
from qjsd.families import random_density
from qjsd.fileio import format_matrix, parse_matrix, read_density_matrix, write_density_matrix


def test_round_trip_is_exact(tmp_path, rng):
    rho = random_density(4, rng=rng)
    path = write_density_matrix(tmp_path / "rho.txt", rho)
    back = read_density_matrix(path)
    np.testing.assert_array_equal(back.mat, rho.mat)


def test_layout():
    text = format_matrix(np.array([[0.5, complex(0, -0.25)], [complex(0, 0.25), 0.5]]))
    lines = text.splitlines()
    assert lines[0] == "2"
    assert lines[1] == "0.5+0j 0-0.25j"
    assert lines[2] == "0+0.25j 0.5+0j"


def test_accepts_exponents():
    a = parse_matrix("2\n1e-3+0j 2.5e-1-1E-2j\n2.5e-1+1E-2j 0.999+0j\n")
    assert a[0, 0] == 1e-3
    assert a[0, 1] == 0.25 - 0.01j


def test_seventeen_significant_digits():
    text = format_matrix(np.array([[1 / 3]]))
    assert text.splitlines()[1] == "0.33333333333333331+0j"


@pytest.mark.parametrize(
    "text",
    ["", "x\n", "2\n1+0j 0+0j\n", "2\n1+0j\n0+0j 0+0j\n", "1\nabc\n"],
)
def test_malformed(text):
    with pytest.raises(QJSDError):
        parse_matrix(text)
