import json
import subprocess
import sys

import pytest

from lvcodes.cli import EXIT_INFEASIBLE, EXIT_IO, EXIT_MALFORMED, EXIT_USAGE, main

CODE = ["--N", "4", "--u1", "40", "--v", "2", "--R", "1/43"]


def test_params_worked(capsys):
    assert main(["params", "--N", "4", "--u1", "50", "--v", "2", "--R", "0.1"]) == 0
    out = dict(line.split("=", 1) for line in capsys.readouterr().out.splitlines())
    assert (out["q"], out["k"], out["msg_len"], out["delta_bound"]) == ("401", "80", "40", "8/64481201")


def test_params_json_and_preset(capsys):
    assert main(["params", "--N", "4", "--R", "1/62", "--eps", "1/2", "--json"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["v"] == 2 and out["u"] <= 64


def test_encode_decode_roundtrip(tmp_path, capsys):
    msg = tmp_path / "m.txt"
    cw = tmp_path / "c.txt"
    dec = tmp_path / "d.txt"
    msg.write_text(" ".join(str(i) for i in range(8)) + "\n")
    assert main(["encode", *CODE, "-i", str(msg), "-o", str(cw), "--seed", "1"]) == 0
    assert main(["decode", "-i", str(cw), "-o", str(dec)]) == 0
    assert dec.read_text().split() == [str(i) for i in range(8)]
    lines = cw.read_text().splitlines()
    for i in (1, 2):
        lines[i] = " ".join("0" for _ in lines[i].split())
    cw.write_text("\n".join(lines) + "\n")
    assert main(["decode", "-i", str(cw), "-o", str(dec)]) == 0
    assert dec.read_text() == "BOTTOM\n"


def test_exit_codes(tmp_path, capsys):
    assert main(["params", "--N", "4", "--u1", "50", "--v", "2", "--R", "1/7"]) == EXIT_INFEASIBLE
    assert "nearest feasible rates" in capsys.readouterr().err
    assert main(["params", *CODE, "--q", "400"]) == EXIT_INFEASIBLE
    assert main(["params", "--N", "4", "--R", "1/10"]) == EXIT_USAGE
    assert main(["decode", "-i", str(tmp_path / "missing")]) == EXIT_IO
    bad = tmp_path / "bad.txt"
    bad.write_text("4 40 46 401\n1 2\n")
    assert main(["decode", "-i", str(bad)]) == EXIT_MALFORMED
    m = tmp_path / "m.txt"
    m.write_text("1 2 3\n")
    assert main(["encode", *CODE, "-i", str(m)]) == EXIT_MALFORMED
    assert main(["bogus"]) == EXIT_USAGE


def test_simulate_and_rmt(capsys):
    assert main(["simulate", *CODE, "--strategy", "random_error,substitution", "--trials", "5", "--json"]) == 0
    rep = json.loads(capsys.readouterr().out)
    assert rep["trials"] == 10 and rep["wrong_message_count"] == 0 and rep["in_model"]
    assert main(["simulate", *CODE, "--trials", "2", "--rho-r", "1/2", "--rho-w", "1/2"]) == 0
    assert "out of construction model" in capsys.readouterr().out
    assert main(["rmt", *CODE, "--paths", "1", "--trials", "3"]) == 0
    out = capsys.readouterr().out
    assert "correct=3" in out and "transmission_rate=43" in out


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "lvcodes", "params", *CODE], capture_output=True, text=True)
    assert res.returncode == 0 and "budget=1" in res.stdout
