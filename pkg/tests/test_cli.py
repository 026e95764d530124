import cmath
import json
import os
import subprocess
import sys

import pytest

from stabrbm.cli import CliError, main, parse_source
from stabrbm.rbm import deserialize

from conftest import CODES, ROOT


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def write(tmp_path, name, text):
    path = tmp_path / name
    path.write_text(text)
    return path


@pytest.fixture
def five_doc(tmp_path, capsys):
    out = tmp_path / "five.json"
    code, _, _ = run(capsys, "compile", CODES / "five_qubit.stab", "--logical", "x+", "-o", out)
    assert code == 0
    return out


def test_parse_source_grammar():
    src = parse_source("# comment\n\nXX  # trailing\n!logical z+,x-\n-ZZ\n", "t.stab")
    assert [str(g) for g in src.generators] == ["XX", "-ZZ"]
    assert src.lines == [3, 5]
    assert src.logical == ["z+", "x-"] and src.logical_line == 4
    with pytest.raises(CliError, match="t.stab:2"):
        parse_source("XX\nXQ\n", "t.stab")
    with pytest.raises(CliError, match="expected 2"):
        parse_source("XX\nXXX\n", "t.stab")
    with pytest.raises(CliError, match="no generators"):
        parse_source("# nothing\n", "t.stab")
    with pytest.raises(CliError, match="unknown directive"):
        parse_source("!frobnicate\nX\n", "t.stab")


def test_compile_five_qubit(five_doc, capsys):
    doc = json.loads(five_doc.read_text())
    assert doc["n_visible"] == 5
    assert len(doc["hidden"]) == 5
    # all five units come from visible couplings, none are parity units
    assert all(len(u["weights"]) == 2 for u in doc["hidden"])


def test_compile_summary(tmp_path, capsys):
    code, out, _ = run(capsys, "compile", CODES / "five_qubit.stab", "--logical", "x+", "-o", tmp_path / "m.json")
    assert code == 0
    assert "p = 4, q = 0, k = 1" in out
    assert "hidden units: 5 (0 z-type, 5 from visible couplings)" in out
    assert "bound p(p-1)/2 + r = 10" in out


def test_compile_bell(tmp_path, capsys):
    code, _, _ = run(capsys, "compile", CODES / "bell.stab", "-o", tmp_path / "bell.json")
    assert code == 0
    m = deserialize((tmp_path / "bell.json").read_bytes())
    assert (m.n_visible, m.n_hidden) == (2, 1)


def test_compile_default_output_path(tmp_path, capsys):
    src = write(tmp_path, "z.stab", "Z\n")
    assert run(capsys, "compile", src)[0] == 0
    assert (tmp_path / "z.rbm.json").exists()


@pytest.mark.parametrize(
    "text, code, fragment",
    [
        ("X\nZ\n", 3, "lines.stab:1 and"),
        ("Z\n# c\n-Z\n", 4, "-I"),
        ("XX\nXQ\n", 2, "lines.stab:2"),
        ("XZZXI\nIXZZX\nXIXZZ\nZXIXZ\n!logical x+ z+\n", 2, "k=1"),
        ("XZZXI\nIXZZX\nXIXZZ\nZXIXZ\n!logical y+\n", 2, "unknown logical choice"),
    ],
)
def test_compile_errors(tmp_path, capsys, text, code, fragment):
    src = write(tmp_path, "lines.stab", text)
    got, out, err = run(capsys, "compile", src, "-o", tmp_path / "m.json")
    assert got == code
    assert fragment in err
    assert len(err.strip().splitlines()) == 1
    assert err.startswith("stabrbm: error[")


def test_anticommuting_names_both_lines(tmp_path, capsys):
    src = write(tmp_path, "ac.stab", "# header\nXI\nIZ\nZI\n")
    code, _, err = run(capsys, "compile", src)
    assert code == 3
    assert "ac.stab:2" in err and "ac.stab:4" in err


def test_verify_five_qubit(five_doc, capsys):
    code, out, _ = run(capsys, "verify", CODES / "five_qubit.stab", five_doc, "--logical", "x+")
    assert code == 0
    fid = float(next(line.split()[1] for line in out.splitlines() if line.startswith("fidelity")))
    assert fid >= 1 - 1e-10
    assert out.count("residual") == 5


def test_verify_uses_file_directive(tmp_path, capsys):
    out = tmp_path / "steane.json"
    assert run(capsys, "compile", CODES / "steane.stab", "-o", out)[0] == 0
    assert run(capsys, "verify", CODES / "steane.stab", out)[0] == 0


def test_verify_detects_wrong_eigenstate(five_doc, capsys):
    code, out, err = run(capsys, "verify", CODES / "five_qubit.stab", five_doc, "--logical", "x-")
    assert code == 5
    assert "FAIL" in out and "error[verify]" in err


def test_verify_corrupted_weight(five_doc, tmp_path, capsys):
    doc = json.loads(five_doc.read_text())
    key = next(iter(doc["hidden"][0]["weights"]))
    doc["hidden"][0]["weights"][key][1] += 0.3
    bad = write(tmp_path, "bad.json", json.dumps(doc))
    code, _, err = run(capsys, "verify", CODES / "five_qubit.stab", bad, "--logical", "x+")
    assert code == 5
    assert err.startswith("stabrbm: error[verify]")


def test_verify_over_ceiling(tmp_path, capsys):
    src = write(tmp_path, "big.stab", "Z" * 25 + "\n")
    machine = tmp_path / "big.json"
    assert run(capsys, "compile", src, "-o", machine)[0] == 0
    code, _, err = run(capsys, "verify", src, machine)
    assert code == 6 and "--max-qubits" in err


def test_verify_size_mismatch(five_doc, capsys):
    code, _, err = run(capsys, "verify", CODES / "bell.stab", five_doc)
    assert code == 2


def test_eval_five_qubit(five_doc, capsys):
    code, out0, _ = run(capsys, "eval", five_doc, "00000")
    assert code == 0
    _, out1, _ = run(capsys, "eval", five_doc, "11000")
    a0 = complex(*map(float, out0.split()))
    a1 = complex(*map(float, out1.split()))
    assert a1 / a0 == pytest.approx(-1, abs=1e-12)


def test_eval_exact_zero(tmp_path, capsys):
    src = write(tmp_path, "z.stab", "Z\n")
    machine = tmp_path / "z.json"
    run(capsys, "compile", src, "-o", machine)
    code, out, _ = run(capsys, "eval", machine, "1")
    assert code == 0 and out == "0 0\n"


def test_eval_all_zero_matches_definition(five_doc, capsys):
    m = deserialize(five_doc.read_bytes())
    expected = cmath.exp(m.log_prefactor)
    for u in m.hidden:
        expected *= 1 + cmath.exp(u.bias)
    _, out, _ = run(capsys, "eval", five_doc, "00000")
    re, im = map(float, out.split())
    assert complex(re, im) == pytest.approx(expected, abs=1e-12)
    # 17 significant digits
    assert all(len(tok.lstrip("-").replace(".", "").split("e")[0]) <= 17 for tok in out.split())


@pytest.mark.parametrize("bits", ["0000", "000000", "0000a"])
def test_eval_bad_bitstring(five_doc, capsys, bits):
    code, _, err = run(capsys, "eval", five_doc, bits)
    assert code == 2 and err.startswith("stabrbm: error[parse]")


def test_eval_malformed_machine(tmp_path, capsys):
    bad = write(tmp_path, "bad.json", '{"version": 9}')
    code, _, err = run(capsys, "eval", bad, "0")
    assert code == 2 and "bad.json" in err


def test_info_five_qubit(capsys):
    code, out, _ = run(capsys, "info", CODES / "five_qubit.stab")
    assert code == 0
    assert "k = 1" in out
    assert "logical 1: X = ZIIZX  Z = " in out
    for block in ("B1:", "B2:", "C1:", "D3:", "E1:", "F1:"):
        assert block in out


def test_info_bell_and_duplicates(tmp_path, capsys):
    code, out, _ = run(capsys, "info", CODES / "bell.stab")
    assert code == 0 and "k = 0" in out and "no logical qubits" in out
    src = write(tmp_path, "dup.stab", "XX\nZZ\nXX\n")
    code, out, _ = run(capsys, "info", src)
    assert "discarded dependent rows: 1" in out


def test_info_errors(tmp_path, capsys):
    code, _, err = run(capsys, "info", write(tmp_path, "ac.stab", "X\nZ\n"))
    assert code == 3
    code, _, err = run(capsys, "info", tmp_path / "missing.stab")
    assert code == 2 and "cannot read" in err


def _cli(args, cwd, seed):
    env = dict(os.environ, PYTHONHASHSEED=str(seed))
    return subprocess.run(
        [sys.executable, "-m", "stabrbm", *args], cwd=cwd, env=env, capture_output=True, check=True
    ).stdout


def test_pipeline_reproducible_across_processes(tmp_path):
    outputs = []
    for seed in (0, 1, 12345):
        machine = tmp_path / f"m{seed}.json"
        _cli(["compile", str(CODES / "toric_2x2.stab"), "--logical", "x+,z-", "-o", str(machine)], ROOT, seed)
        verify = _cli(["verify", str(CODES / "toric_2x2.stab"), str(machine), "--logical", "x+,z-"], ROOT, seed)
        amp = _cli(["eval", str(machine), "10110100"], ROOT, seed)
        outputs.append((machine.read_bytes(), verify, amp))
    assert outputs[0] == outputs[1] == outputs[2]
