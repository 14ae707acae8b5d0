import json

import numpy as np
import pytest

import core.utils
from core.cli import EXIT_FAILURE, EXIT_OK, EXIT_USAGE, format_number, main, parse_numbers
from core.harness.cases import cases_in_suite
from core.utils import UsageError

core.utils.TESTING = True


def test_parse_numbers():
    exact = parse_numbers("1, 2,3,4", 4)
    assert exact.dtype == np.int64 and exact.tolist() == [1, 2, 3, 4]
    mixed = parse_numbers("1,0.5,0,0", 4)
    assert mixed.dtype == np.float64 and mixed.tolist() == [1, 0.5, 0, 0]
    with pytest.raises(UsageError):
        parse_numbers("1,2,3", 4)
    with pytest.raises(UsageError):
        parse_numbers("1,x,3,4", 4)
    huge = parse_numbers("99999999999999999999,0,0,0", 4)
    assert huge.dtype == np.float64 and huge[0] == 1e20


def test_format_number():
    assert format_number(np.int64(16)) == "16"
    assert format_number(1.0) == "1"
    assert format_number(2 ** 0.5) == "1.41421356237"


def test_quad(capsys):
    assert main(["quad", "--a", "1,2,3,4", "--b", "5,6,7,8", "--v", "0.6"]) == EXIT_OK
    lines = capsys.readouterr().out.splitlines()
    assert lines == [
        "wedges:       16",
        "determinants: 16",
        "boosted:      16",
    ]


def test_quad_usage_errors(capsys):
    assert main(["quad", "--a", "1,2,3,4", "--b", "5,6,7,8", "--v", "1.0"]) == EXIT_USAGE
    assert "usage error" in capsys.readouterr().err
    assert main(["quad", "--a", "1,2,3", "--b", "5,6,7,8"]) == EXIT_USAGE
    assert main(["quad", "--a", "1,2,3,4"]) == EXIT_USAGE


def test_norm(capsys):
    assert main(["norm", "--point", "1,0,0,0"]) == EXIT_OK
    assert "integrated:  1\n" in capsys.readouterr().out
    assert main(["norm", "--point", "2,1,0,0"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "closed form: 1.73205080757" in out
    assert "integrated:  1.7320508" in out


def test_norm_through_null_cone(capsys):
    assert main(["norm", "--point", "1,1,0,0"]) == EXIT_FAILURE
    assert "PathCrossesNullCone" in capsys.readouterr().err
    assert main(["norm", "--point", "2,1,0,0", "--steps", "0"]) == EXIT_USAGE


def test_uncurl(capsys):
    assert main(["uncurl"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "signature:               (3,0)" in out
    assert "curl null space dim:     1" in out
    assert "solution dim:            0" in out
    assert main(["uncurl", "--signature", "nonsense"]) == EXIT_USAGE
    assert main(["uncurl", "--samples", "0"]) == EXIT_FAILURE


def test_verify_list(capsys):
    assert main(["verify", "--suite", "clifford", "--list"]) == EXIT_OK
    names = capsys.readouterr().out.split()
    assert names == [c.name for c in cases_in_suite("clifford")]
    assert main(["verify", "--suite", "nonsense", "--list"]) == EXIT_USAGE


def test_verify_writes_json(tmp_path, capsys):
    path = tmp_path / "report.json"
    assert main(["verify", "--suite", "clifford", "--trials", "3", "--seed", "7", "--json", str(path)]) == EXIT_OK
    assert "PASSED" in capsys.readouterr().out
    data = json.loads(path.read_text(encoding="utf-8"))
    assert data["suite"] == "clifford"
    assert data["seed"] == 7
    assert data["trials"] == 3
    assert data["passed"] is True


def test_verify_usage_errors():
    assert main(["verify", "--suite", "nonsense"]) == EXIT_USAGE
    assert main(["verify", "--trials", "0"]) == EXIT_USAGE
    assert main(["verify", "--mode", "complex"]) == EXIT_USAGE
    assert main([]) == EXIT_USAGE


def test_quad_large_integers(capsys):
    assert main(["quad", "--a", "100000,0,100000,0", "--b", "0,100000,0,100000"]) == EXIT_OK
    assert capsys.readouterr().out.splitlines() == [
        "wedges:       1e+20",
        "determinants: 1e+20",
        "boosted:      1e+20",
    ]
    assert main(["quad", "--a", "99999999999999999999,0,3,4", "--b", "5,6,7,8"]) == EXIT_OK
    assert "determinants: -2.4e+21" in capsys.readouterr().out
