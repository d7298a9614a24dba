import json
import subprocess
import sys

import pytest

from conftest import FIXTURES, EX11_GAMMA
from qss.cli import format_code, main, parse_code_file, parse_code_text, parse_vector, write_code_file
from qss.codes import code_from_generator, dual
from qss.errors import ParseError
from qss.gf import make_field

EX11 = str(FIXTURES / "ex11.code")


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_gamma_json(capsys):
    code, out, _ = run(capsys, "gamma", EX11, "--g", "00000100101", "--json")
    assert code == 0
    data = json.loads(out)
    assert data["gamma_min"][0] == [1, 8, 11]
    assert len(data["gamma_min"]) == 21
    assert sorted(map(set, data["gamma_min"]), key=sorted) == sorted(EX11_GAMMA, key=sorted)
    assert (data["n"], data["k"], data["q"], data["d"], data["beta"], data["pure"]) == (11, 6, 2, 3, 1, True)
    assert data["multiplicity"]["1,8,11"] == 1
    assert data["sizes"] == {"3": 5, "5": 16}


def test_json_is_byte_stable(capsys):
    outputs = {run(capsys, "recover", EX11, "--json")[1] for _ in range(2)}
    assert len(outputs) == 1


def test_recover_single_set(capsys):
    code, out, _ = run(capsys, "recover", EX11, "--g", "00000100101", "--secret", "1", "--set", "3,10,11", "--json")
    assert code == 0
    (row,) = json.loads(out)["recoveries"]
    assert row["recovered"] == 1 and row["parity"] == [1] and row["ok"]


def test_recover_superset_uses_contained_witness(capsys):
    code, out, _ = run(capsys, "recover", EX11, "--secret", "1", "--set", "1,3,8,10,11", "--json")
    assert code == 0
    (row,) = json.loads(out)["recoveries"]
    assert row["witness"] == "10000001001"


def test_recover_unauthorized_set(capsys):
    code, _, err = run(capsys, "recover", EX11, "--set", "3,10")
    assert code == 1 and "no minimal authorized set" in err


def test_compare_steane(capsys):
    code, out, _ = run(capsys, "compare", str(FIXTURES / "steane.code"), "--json")
    assert code == 0
    data = json.loads(out)["compare"]
    assert data["agree"] and data["only_oracle"] == [] and data["only_minimal_codewords"] == []


def test_oracle_single_set(capsys):
    code, out, _ = run(capsys, "oracle", EX11, "--set", "3,10,11", "--json")
    assert code == 0
    data = json.loads(out)["oracle"]
    assert data["authorized"] and not data["unauthorized"]
    assert data["unauthorized_witness"] == "(00000000000|00100000011)"


def test_oracle_full_zerosum(capsys):
    code, out, _ = run(capsys, "oracle", str(FIXTURES / "zerosum3.code"))
    assert code == 0
    assert "{1, 2}" in out and "invariants ok" in out


def test_other_commands(capsys):
    code, out, _ = run(capsys, "validate", EX11)
    assert code == 0 and "pass" in out
    code, out, _ = run(capsys, "stabilizer", EX11)
    assert code == 0 and len(out.strip().splitlines()) == 10
    code, out, _ = run(capsys, "minimal", str(FIXTURES / "zerosum3.code"))
    assert code == 0 and out.splitlines()[0].startswith("120  weight 2  support {1,2}")
    code, out, _ = run(capsys, "encode", str(FIXTURES / "zerosum3.code"), "--secret", "2", "--json")
    assert code == 0
    labels = [t["label"] for t in json.loads(out)["states"][0]["terms"]]
    assert sorted(labels) == ["021", "102", "210"]


@pytest.mark.parametrize(
    "fixture,extra,expected",
    [
        ("malformed.code", [], 3),
        ("zero.code", [], 3),
        ("noncss.code", [], 1),
        ("impure9.code", [], 1),
        ("missing.code", [], 3),
        ("ex11.code", ["--g", "10000000000"], 1),
        ("ex11.code", ["--g", "101"], 3),
    ],
)
def test_exit_codes(capsys, fixture, extra, expected):
    code, _, _ = run(capsys, "gamma", str(FIXTURES / fixture), *extra)
    assert code == expected


def test_guard_exit_codes(capsys):
    assert run(capsys, "oracle", EX11)[0] == 2
    assert run(capsys, "recover", EX11, "--max-dim", "1024")[0] == 2
    assert run(capsys, "gamma", str(FIXTURES / "impure9.code"), "--allow-impure")[0] == 0


def test_parse_errors_carry_line_numbers():
    with pytest.raises(ParseError, match="line 3"):
        parse_code_file(FIXTURES / "malformed.code")
    with pytest.raises(ParseError, match="line 1"):
        parse_code_text("rows: k=1 n=1\n1\n")
    with pytest.raises(ParseError, match="expected k=2 rows"):
        parse_code_text("field: p=2 m=1\nrows: k=2 n=2\n1 1\n")
    with pytest.raises(ParseError, match="expected 3 entries"):
        parse_code_text("field: p=2 m=1\nrows: k=1 n=3\n1 1\n")


def test_round_trip(tmp_path):
    F4 = make_field(2, 2)
    code = dual(code_from_generator(F4, [[1, 2, 3]]))
    path = tmp_path / "gf4.code"
    write_code_file(code, path, comment="GF(4) example")
    text = path.read_text()
    assert "poly: 1 1 1" in text
    again = parse_code_file(path)
    assert again.spec == code.spec and again.same_codewords(code)
    ex11 = parse_code_file(EX11)
    assert parse_code_text(format_code(ex11)).same_codewords(ex11)
    assert parse_code_file(FIXTURES / "ex11_rowmix.code").same_codewords(ex11)


def test_parse_vector():
    assert parse_vector("0012", 4, 3) == [0, 0, 1, 2]
    assert parse_vector("0,10,2", 3, 11) == [0, 10, 2]
    with pytest.raises(ParseError):
        parse_vector("01", 3, 2)


def test_console_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "qss", "gamma", str(FIXTURES / "zerosum3.code")],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0
    assert "3 minimal authorized sets" in proc.stdout
