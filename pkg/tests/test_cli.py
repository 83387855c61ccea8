import json

import pytest

from terracini.arith import MERSENNE_61
from terracini.cli import main
from terracini.fatpoints import PointConfiguration


def write(tmp_path, text):
    f = tmp_path / "conf.json"
    f.write_text(text)
    return str(f)


def conf(points, p=MERSENNE_61):
    return json.dumps(PointConfiguration(2, tuple(points), p).to_json())


def test_check_reports_cohomology(tmp_path, capsys):
    path = write(tmp_path, conf([(0, 0, 1), (1, 0, 1), (5, 0, 1), (3, 7, 1)]))
    assert main(["check", "--file", path, "--d", "4"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["h0"] == 4 and out["h1"] == 1


def test_check_rejects_repeated_points(tmp_path, capsys):
    path = write(tmp_path, json.dumps({"n": 2, "prime": "101", "points": [["1", "2", "1"], ["2", "4", "2"]]}))
    assert main(["check", "--file", path, "--d", "3"]) == 2
    assert "points not distinct" in capsys.readouterr().err


def test_check_reports_json_position(tmp_path, capsys):
    path = write(tmp_path, '{"n": 2,\n "prime": }')
    assert main(["check", "--file", path, "--d", "3"]) == 2
    assert "line 2 column" in capsys.readouterr().err


def test_check_rejects_composite_prime(tmp_path, capsys):
    path = write(tmp_path, conf([(0, 0, 1)], p=101))
    assert main(["check", "--file", path, "--d", "3", "--prime", "100"]) == 2


def test_verify_main_is_deterministic(tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    args = ["verify-main", "--sections", "ah", "--primes", "1", "--seed", "1", "--no-timing"]
    assert main(args + ["--out", str(a)]) == 0
    assert main(args + ["--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()
    lines = a.read_text().splitlines()
    assert len(lines) > 100 and all(line.split(",")[-1] == "0" for line in lines[1:])


def test_verify_main_unknown_section(capsys):
    assert main(["verify-main", "--sections", "bogus"]) == 2


def test_family_spread_and_dim(tmp_path, capsys):
    assert main(["family", "spread", "--name", "collinear", "--d", "6", "--x", "10", "--primes", "1"]) == 0
    assert capsys.readouterr().out.strip() == "8"
    out = tmp_path / "dim.json"
    assert main(["family", "dim", "--name", "cubic9_plus1", "--primes", "1", "--json", str(out)]) == 0
    rep = json.loads(out.read_text())
    assert rep["jacobian_rank"] == 19 and rep["expected_dim"] == 19


def test_family_sample_json(tmp_path):
    out = tmp_path / "s.json"
    assert main(["family", "sample", "--name", "conic6", "--seed", "3", "--json", str(out)]) == 0
    S = PointConfiguration.from_json(json.loads(out.read_text()))
    assert S.x == 6


def test_seed_from_environment(monkeypatch, capsys):
    monkeypatch.setenv("TERRACINI_SEED", "9")
    main(["family", "sample", "--name", "conic6", "--primes", "1"])
    a = capsys.readouterr().out
    main(["family", "sample", "--name", "conic6", "--primes", "1", "--seed", "9"])
    assert capsys.readouterr().out == a


def test_bad_prime_list():
    with pytest.raises(SystemExit):
        main(["family", "dim", "--name", "conic6", "--prime-list", "15"])
