import json
import subprocess
import sys

import numpy as np
import pytest

from hoffman import box
from hoffman.cli import (DimensionError, ParseError, RunConfig, main, parse_generator,
                         parse_matrix)


def write(path, text):
    path.write_text(text)
    return str(path)


def test_parse_csv_identity(tmp_path):
    A = parse_matrix(write(tmp_path / "a.csv", "1,0\n0,1\n"))
    assert np.array_equal(A, np.eye(2))


def test_parse_csv_ragged(tmp_path):
    with pytest.raises(DimensionError):
        parse_matrix(write(tmp_path / "a.csv", "1,0\n0\n"))


def test_parse_csv_location(tmp_path):
    with pytest.raises(ParseError) as info:
        parse_matrix(write(tmp_path / "a.csv", "1,0\n0,x\n"))
    assert info.value.line == 2 and info.value.column == 2


def test_mtx_array_matches_csv(tmp_path):
    csv = parse_matrix(write(tmp_path / "a.csv", "1,2.5\n-3,0.1\n"))
    mtx = parse_matrix(write(tmp_path / "a.mtx",
                             "%%MatrixMarket matrix array real general\n2 2\n1\n-3\n2.5\n0.1\n"), "mtx")
    assert np.array_equal(csv, mtx)


def test_mtx_coordinate(tmp_path):
    mtx = parse_matrix(write(tmp_path / "c.mtx",
                             "%%MatrixMarket matrix coordinate real general\n% comment\n"
                             "2 3 2\n1 1 4\n2 3 -1\n"), "mtx")
    assert np.array_equal(mtx, [[4, 0, 0], [0, 0, -1]])


def test_mtx_bad_header(tmp_path):
    with pytest.raises(ParseError):
        parse_matrix(write(tmp_path / "c.mtx", "2 2\n1\n0\n0\n1\n"), "mtx")


def test_generator_specs():
    assert np.array_equal(parse_generator("box:2"), box(2))
    assert parse_generator("random:4,2:3").shape == (4, 2)
    for bad in ("box", "box:x", "cube:3", "random:4:1"):
        with pytest.raises(ParseError):
            parse_generator(bad)


def test_run_config_needs_one_source():
    with pytest.raises(ValueError):
        RunConfig()
    with pytest.raises(ValueError):
        RunConfig(input="a", generate="box:2")


def test_box13_command_line_args_parse():
    # the run itself is covered by the extended acceptance test
    from hoffman.cli import build_parser
    ns = build_parser().parse_args(["--generate", "box:13", "--method", "cover"])
    assert ns.generate == "box:13" and ns.method == "cover"


def test_l1ball4_lpcc(capsys):
    assert main(["--generate", "l1ball:4", "--method", "lpcc"]) == 0
    assert "H = 5\n" in capsys.readouterr().out


def test_ragged_exit_1(tmp_path):
    assert main(["--input", write(tmp_path / "bad.csv", "1,0\n0\n")]) == 1


def test_zero_matrix_exit_3(tmp_path):
    assert main(["--input", write(tmp_path / "z.csv", "0,0\n")]) == 3


def test_budget_exit_4(capsys):
    assert main(["--generate", "box:4", "--method", "cover", "--max-steps", "5"]) == 4
    assert "bounds:" in capsys.readouterr().out


def test_usage_exit_1():
    assert main([]) == 1
    assert main(["--generate", "box:2", "--method", "magic"]) == 1
    assert main(["--generate", "box:2", "--tol-zero", "-1"]) == 1


def test_missing_file_exit_1(tmp_path):
    assert main(["--input", str(tmp_path / "nope.csv")]) == 1


def _emit(tmp_path, spec="box:2", method="cover"):
    out = tmp_path / "cert.json"
    assert main(["--generate", spec, "--method", method, "--json", str(out)]) == 0
    return out


def test_json_schema(tmp_path):
    data = json.loads(_emit(tmp_path).read_text())
    assert list(data) == ["m", "n", "norms", "H", "method", "argmax_J", "F", "I", "rho_F",
                          "iterations", "lp_solves"]
    assert data["norms"] == {"domain": "l1", "codomain": "linf"}
    assert data["m"] == 4 and data["H"] == 2.0 and data["iterations"] == 6
    assert all(min(S) >= 1 for S in data["F"] + data["I"])


def test_json_seventeen_digits(tmp_path):
    text = _emit(tmp_path, "box:3").read_text()
    assert "0.33333333333333331" in text


def test_verify_roundtrip(tmp_path, capsys):
    cert = _emit(tmp_path)
    assert main(["--generate", "box:2", "--verify", str(cert)]) == 0
    assert "valid: ok" in capsys.readouterr().out


@pytest.mark.parametrize("spec,method", [("simplex:3", "cover"), ("box:2", "bruteforce"),
                                         ("random:5,2:4", "cover"), ("feasible:5,2:1", "auto")])
def test_verify_roundtrip_methods(tmp_path, spec, method):
    cert = _emit(tmp_path, spec, method)
    assert main(["--generate", spec, "--verify", str(cert)]) == 0


def test_verify_tampered_value(tmp_path, capsys):
    cert = _emit(tmp_path)
    data = json.loads(cert.read_text())
    data["H"] += 1
    cert.write_text(json.dumps(data))
    assert main(["--generate", "box:2", "--verify", str(cert)]) == 3
    assert "value mismatch" in capsys.readouterr().out


def test_verify_tampered_f(tmp_path, capsys):
    cert = _emit(tmp_path)
    data = json.loads(cert.read_text())
    del data["F"][0]
    del data["rho_F"][0]
    cert.write_text(json.dumps(data))
    assert main(["--generate", "box:2", "--verify", str(cert)]) == 3
    assert "covering violated" in capsys.readouterr().out


def test_verify_enum_rejected(tmp_path):
    cert = _emit(tmp_path, "box:2", "enum")
    assert main(["--generate", "box:2", "--verify", str(cert)]) == 3


def test_verify_malformed(tmp_path):
    assert main(["--generate", "box:2", "--verify", write(tmp_path / "c.json", "{")]) == 1


def test_csv_mtx_same_result(tmp_path):
    A = np.array([[1.5, -2.0], [0.0, 1.0], [-1.0, -0.25]])
    csv = write(tmp_path / "a.csv", "\n".join(",".join(repr(float(x)) for x in r) for r in A) + "\n")
    body = "\n".join(repr(float(x)) for x in A.T.ravel())
    mtx = write(tmp_path / "a.mtx", f"%%MatrixMarket matrix array real general\n3 2\n{body}\n")
    assert main(["--input", csv, "--method", "cover", "--json", str(tmp_path / "1.json")]) == 0
    assert main(["--input", mtx, "--format", "mtx", "--method", "cover",
                 "--json", str(tmp_path / "2.json")]) == 0
    assert (tmp_path / "1.json").read_text() == (tmp_path / "2.json").read_text()


def test_bound_check(tmp_path, capsys):
    pair = write(tmp_path / "bu.txt", "1,1,1,1,1,1\n3,0,0\n")
    assert main(["--generate", "box:3", "--bound-check", pair]) == 0
    assert "holds" in capsys.readouterr().out


def test_bound_check_wrong_length(tmp_path):
    pair = write(tmp_path / "bu.txt", "1,1\n3,0,0\n")
    assert main(["--generate", "box:3", "--bound-check", pair]) == 1


def test_bound_check_empty_polyhedron(tmp_path):
    pair = write(tmp_path / "bu.txt", "-1,-1\n0\n")
    assert main(["--generate", "box:1", "--bound-check", pair]) == 3


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "hoffman", "--generate", "simplex:2"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert "method = cover" in proc.stdout
