"""Complex RBM with 0/1 units, hidden layer traced out.

    psi(v) = exp(log_prefactor + sum_i a_i v_i) * prod_j (1 + exp(b_j + sum_i W_ij v_i))

No partition function is ever computed; amplitudes are unnormalized.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Mapping

import numpy as np

from .oracle import StateVector
from .pauli import BasisKet

FORMAT_VERSION = 1
DEFAULT_QUBIT_LIMIT = 20

_HALF_PI = math.pi / 2
_UNITS = np.array([1, 1j, -1, -1j], dtype=complex)
_SNAP_TOL = 1e-12


class MachineFormatError(ValueError):
    """Malformed or incompatible machine document."""


def quarter_turns(q: int) -> complex:
    """``i*pi/2 * q`` as a complex exponent."""
    return complex(0.0, (q % 4) * _HALF_PI)


def _exp(theta: np.ndarray) -> np.ndarray:
    """Elementwise ``exp`` that returns exact units when ``Im(theta)`` is a multiple of pi/2.

    Keeps ``1 + exp(i*pi)`` exactly zero, which the parity units rely on.
    """
    k = theta.imag / _HALF_PI
    kr = np.rint(k)
    snap = np.abs(k - kr) <= _SNAP_TOL * np.maximum(1.0, np.abs(kr))
    out = np.exp(theta)
    if snap.any():
        unit = _UNITS[kr[snap].astype(np.int64) % 4]
        out[snap] = np.exp(theta.real[snap]) * unit
    return out


@dataclass(frozen=True)
class HiddenUnit:
    bias: complex
    weights: Mapping[int, complex] = field(default_factory=dict)

    def __post_init__(self) -> None:
        w = {int(i): complex(v) for i, v in self.weights.items()}
        if any(v == 0 for v in w.values()):
            raise ValueError("hidden unit weights must be nonzero")
        object.__setattr__(self, "weights", w)
        object.__setattr__(self, "bias", complex(self.bias))


@dataclass(frozen=True)
class RbmMachine:
    n_visible: int
    visible_bias: tuple[complex, ...]
    hidden: tuple[HiddenUnit, ...] = ()
    log_prefactor: complex = 0j
    qubit_order: tuple[int, ...] = ()
    format_version: int = FORMAT_VERSION

    def __post_init__(self) -> None:
        object.__setattr__(self, "visible_bias", tuple(complex(a) for a in self.visible_bias))
        object.__setattr__(self, "hidden", tuple(self.hidden))
        object.__setattr__(self, "log_prefactor", complex(self.log_prefactor))
        if not self.qubit_order:
            object.__setattr__(self, "qubit_order", tuple(range(1, self.n_visible + 1)))
        if len(self.visible_bias) != self.n_visible:
            raise ValueError(f"{len(self.visible_bias)} visible biases for {self.n_visible} visible units")
        if sorted(self.qubit_order) != list(range(1, self.n_visible + 1)):
            raise ValueError(f"qubit_order {self.qubit_order} is not a permutation of 1..{self.n_visible}")
        for j, unit in enumerate(self.hidden):
            for i in unit.weights:
                if not 1 <= i <= self.n_visible:
                    raise ValueError(f"hidden unit {j} connects to visible index {i} outside 1..{self.n_visible}")

    @property
    def n_hidden(self) -> int:
        return len(self.hidden)


def _ket_index(m: RbmMachine, v: object) -> int:
    """Accepts a 0/1 string, a 0/1 sequence, or a :class:`BasisKet`."""
    if isinstance(v, BasisKet):
        bits = [v.bit(i) for i in range(v.n)]
    elif isinstance(v, str):
        if any(ch not in "01" for ch in v):
            raise ValueError(f"basis ket {v!r} must contain only 0 and 1")
        bits = [int(ch) for ch in v]
    else:
        bits = [int(b) for b in v]  # type: ignore[union-attr]
        if any(b not in (0, 1) for b in bits):
            raise ValueError("basis ket entries must be 0 or 1")
    if len(bits) != m.n_visible:
        raise ValueError(f"ket has {len(bits)} entries, machine has {m.n_visible} visible units")
    idx = 0
    for b in bits:
        idx = (idx << 1) | b
    return idx


def amplitudes(m: RbmMachine, indices: np.ndarray) -> np.ndarray:
    """Amplitudes for basis indices (``v_1`` is the most significant bit)."""
    idx = np.asarray(indices, dtype=np.int64)
    n = m.n_visible
    bits = {}

    def bit(i: int) -> np.ndarray:
        if i not in bits:
            bits[i] = ((idx >> (n - i)) & 1).astype(float)
        return bits[i]

    log_vis = np.full(idx.shape, m.log_prefactor, dtype=complex)
    for i, a in enumerate(m.visible_bias, start=1):
        if a != 0:
            log_vis = log_vis + a * bit(i)
    out = _exp(log_vis)
    for unit in m.hidden:
        theta = np.full(idx.shape, unit.bias, dtype=complex)
        for i, w in sorted(unit.weights.items()):
            theta = theta + w * bit(i)
        out = out * (1 + _exp(theta))
    return out


def amplitude(m: RbmMachine, v: object) -> complex:
    return complex(amplitudes(m, np.array([_ket_index(m, v)]))[0])


def to_statevector(m: RbmMachine, limit: int = DEFAULT_QUBIT_LIMIT) -> StateVector:
    """Dense amplitudes over all ``2**n`` kets in lexicographic order."""
    if m.n_visible > limit:
        raise ValueError(f"{m.n_visible} visible units exceed the dense limit of {limit}")
    return StateVector(m.n_visible, amplitudes(m, np.arange(1 << m.n_visible)))


def _pair(z: complex) -> list[float]:
    return [float(z.real), float(z.imag)]


def _unpair(obj: object, what: str) -> complex:
    if (
        not isinstance(obj, list)
        or len(obj) != 2
        or not all(isinstance(t, (int, float)) and not isinstance(t, bool) for t in obj)
    ):
        raise MachineFormatError(f"{what}: expected [re, im], got {obj!r}")
    return complex(float(obj[0]), float(obj[1]))


def to_document(m: RbmMachine) -> dict:
    return {
        "version": m.format_version,
        "n_visible": m.n_visible,
        "visible_bias": [_pair(a) for a in m.visible_bias],
        "hidden": [
            {"bias": _pair(u.bias), "weights": {str(i): _pair(w) for i, w in sorted(u.weights.items())}}
            for u in m.hidden
        ],
        "log_prefactor": _pair(m.log_prefactor),
        "qubit_order": list(m.qubit_order),
    }


def serialize(m: RbmMachine) -> bytes:
    # float repr is the shortest string that round-trips exactly
    return (json.dumps(to_document(m), indent=2, allow_nan=False) + "\n").encode("utf-8")


def deserialize(data: bytes | str) -> RbmMachine:
    if isinstance(data, bytes):
        data = data.decode("utf-8")
    try:
        doc = json.loads(data)
    except json.JSONDecodeError as exc:
        raise MachineFormatError(f"not a JSON document: {exc}") from exc
    if not isinstance(doc, dict):
        raise MachineFormatError("machine document must be a JSON object")
    for key in ("version", "n_visible", "visible_bias", "hidden", "log_prefactor"):
        if key not in doc:
            raise MachineFormatError(f"missing field {key!r}")
    if doc["version"] != FORMAT_VERSION:
        raise MachineFormatError(f"unsupported format version {doc['version']!r} (expected {FORMAT_VERSION})")
    n = doc["n_visible"]
    if not isinstance(n, int) or n < 1:
        raise MachineFormatError(f"n_visible must be a positive integer, got {n!r}")
    if not isinstance(doc["visible_bias"], list) or not isinstance(doc["hidden"], list):
        raise MachineFormatError("visible_bias and hidden must be arrays")
    hidden = []
    for j, u in enumerate(doc["hidden"]):
        if not isinstance(u, dict) or "bias" not in u or not isinstance(u.get("weights"), dict):
            raise MachineFormatError(f"hidden unit {j} is malformed")
        try:
            weights = {int(i): _unpair(w, f"hidden[{j}].weights[{i}]") for i, w in u["weights"].items()}
        except ValueError as exc:
            raise MachineFormatError(f"hidden unit {j}: {exc}") from exc
        hidden.append((_unpair(u["bias"], f"hidden[{j}].bias"), weights))
    try:
        return RbmMachine(
            n_visible=n,
            visible_bias=tuple(_unpair(a, f"visible_bias[{i}]") for i, a in enumerate(doc["visible_bias"])),
            hidden=tuple(HiddenUnit(b, w) for b, w in hidden),
            log_prefactor=_unpair(doc["log_prefactor"], "log_prefactor"),
            qubit_order=tuple(doc.get("qubit_order") or ()),
        )
    except MachineFormatError:
        raise
    except (ValueError, TypeError) as exc:
        raise MachineFormatError(str(exc)) from exc
