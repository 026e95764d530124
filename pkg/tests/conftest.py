from __future__ import annotations

from pathlib import Path

import numpy as np
import pytest

from stabrbm.pauli import parse_pauli

ROOT = Path(__file__).resolve().parent.parent
CODES = ROOT / "codes"

FIVE_QUBIT = ["XZZXI", "IXZZX", "XIXZZ", "ZXIXZ"]
FIVE_QUBIT_ELIMINATED = ["YZIZY", "IXZZX", "ZZXIX", "ZIZYY"]
FIVE_QUBIT_FINAL = ["XZIIZ", "ZXZII", "IZXZI", "IIZXZ", "ZIIZX"]
STEANE = ["IIIXXXX", "IXXIIXX", "XIXIXIX", "IIIZZZZ", "IZZIIZZ", "ZIZIZIZ"]

_ACCEPTANCE: list[str] = []


def paulis(words):
    return [parse_pauli(w) for w in words]


def five_qubit_closed_form() -> np.ndarray:
    """exp(i*pi*(v1v2 + v2v3 + v3v4 + v4v5 + v5v1)) in lexicographic order."""
    out = np.empty(32, dtype=complex)
    for idx in range(32):
        v = [(idx >> (4 - i)) & 1 for i in range(5)]
        out[idx] = (-1) ** sum(v[i] * v[(i + 1) % 5] for i in range(5))
    return out


@pytest.fixture
def five_qubit():
    return paulis(FIVE_QUBIT)


@pytest.fixture
def acceptance_report():
    def report(number: int, passed: bool, detail: str) -> None:
        _ACCEPTANCE.append(f"[{'PASS' if passed else 'FAIL'}] criterion {number}: {detail}")

    return report


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE:
            terminalreporter.write_line(line)
