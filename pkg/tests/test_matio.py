import numpy as np
import pytest

from lsqmatch.generate import uniform_pattern
from lsqmatch.matio import format_matrix, load_matrix, parse_matrix, save_matrix


def test_format_header_and_layout():
    text = format_matrix(np.array([[1.0, 2.5], [-3.0, 0.125]]))
    lines = text.splitlines()
    assert lines[0] == "2 2"
    assert lines[1] == "1.0 2.5"
    assert lines[2] == "-3.0 0.125"
    assert text.endswith("\n")


def test_roundtrip_is_bit_exact():
    for seed in (1, 2, 3):
        a = uniform_pattern(9, 4, seed)
        back = parse_matrix(format_matrix(a))
        assert np.array_equal(a, back)


def test_roundtrip_extreme_values():
    a = np.array([[1e-300, 1.7976931348623157e308], [-4.9e-324, 0.3333333333333333]])
    assert np.array_equal(parse_matrix(format_matrix(a)), a)


def test_parse_skips_blank_lines():
    a = parse_matrix("\n2 2\n1.0 2.0\n\n3.0 4.0\n\n")
    assert np.array_equal(a, np.array([[1.0, 2.0], [3.0, 4.0]]))


def test_parse_errors():
    with pytest.raises(ValueError):
        parse_matrix("")
    with pytest.raises(ValueError):
        parse_matrix("2\n1.0\n2.0\n")
    with pytest.raises(ValueError):
        parse_matrix("2 2\n1.0 2.0\n3.0\n")  # short row
    with pytest.raises(ValueError):
        parse_matrix("3 2\n1.0 2.0\n3.0 4.0\n")  # missing row
    with pytest.raises(ValueError):
        parse_matrix("1 2\n1.0 abc\n")


def test_save_and_load(tmp_path):
    a = uniform_pattern(5, 5, 77)
    path = tmp_path / "a.mat"
    save_matrix(path, a)
    assert np.array_equal(load_matrix(path), a)


def test_load_missing_file(tmp_path):
    with pytest.raises(OSError):
        load_matrix(tmp_path / "nope.mat")
