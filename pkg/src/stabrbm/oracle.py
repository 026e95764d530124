"""Brute-force reference states for checking compiled machines.

Nothing here touches the check-matrix code: reference states come from
applying ``prod_j (I + T_j)`` to basis kets directly.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .pauli import PauliOperator, commutes

_UNITS = np.array([1, 1j, -1, -1j], dtype=complex)


class OracleError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class StateVector:
    """``2**n`` amplitudes, index bit ``n-1-i`` holding qubit ``i`` (``v_1`` most significant)."""

    n: int
    amplitudes: np.ndarray

    def __post_init__(self) -> None:
        amps = np.asarray(self.amplitudes, dtype=complex)
        if amps.shape != (1 << self.n,):
            raise OracleError(f"expected {1 << self.n} amplitudes for n={self.n}, got shape {amps.shape}")
        object.__setattr__(self, "amplitudes", amps)

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def normalized(self) -> StateVector:
        return StateVector(self.n, self.amplitudes / self.norm)


def _index_mask(n: int, bits: int) -> int:
    """Qubit bitmask -> mask in statevector index space."""
    return sum(1 << (n - 1 - i) for i in range(n) if (bits >> i) & 1)


def _parity(values: np.ndarray, mask: int) -> np.ndarray:
    return np.bitwise_count(values & mask).astype(np.int64)


def apply_pauli(p: PauliOperator, s: StateVector) -> StateVector:
    if p.n != s.n:
        raise OracleError(f"operator on {p.n} qubits applied to {s.n}-qubit state")
    n = p.n
    idx = np.arange(1 << n, dtype=np.int64)
    xm = _index_mask(n, p.x)
    ym = _index_mask(n, p.x & p.z)
    zm = _index_mask(n, p.z & ~p.x)
    phase = p.phase + 2 * _parity(idx, zm) + _parity(~idx, ym) + 3 * _parity(idx, ym)
    out = np.empty_like(s.amplitudes)
    out[idx ^ xm] = _UNITS[phase % 4] * s.amplitudes
    return StateVector(n, out)


def pauli_matrix(p: PauliOperator) -> np.ndarray:
    """Dense ``2**n x 2**n`` matrix via Kronecker products (test oracle)."""
    single = {
        "I": np.eye(2, dtype=complex),
        "X": np.array([[0, 1], [1, 0]], dtype=complex),
        "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
        "Z": np.array([[1, 0], [0, -1]], dtype=complex),
    }
    mat = np.array([[1]], dtype=complex)
    for i in range(p.n):
        mat = np.kron(mat, single[p.letter(i)])
    return _UNITS[p.phase] * mat


def gf2_rank(vectors: Sequence[int]) -> int:
    rank = 0
    rows = [v for v in vectors if v]
    while rows:
        pivot = rows.pop()
        if not pivot:
            continue
        rank += 1
        low = pivot & -pivot
        rows = [r ^ pivot if r & low else r for r in rows]
        rows = [r for r in rows if r]
    return rank


def _symplectic_vectors(gens: Sequence[PauliOperator]) -> list[int]:
    return [g.x | (g.z << g.n) for g in gens]


def projector_state(gens: Sequence[PauliOperator]) -> StateVector:
    """Unnormalized state fixed by ``n`` independent commuting generators.

    ``prod_j (I + T_j)`` is applied to basis kets in lexicographic order until
    the result is nonzero.  Entries stay Gaussian integers, so the arithmetic
    is exact in double precision.
    """
    gens = list(gens)
    if not gens:
        raise OracleError("no generators given")
    n = gens[0].n
    if any(g.n != n for g in gens):
        raise OracleError("generators act on different qubit counts")
    if gf2_rank(_symplectic_vectors(gens)) < n:
        raise OracleError(f"need {n} independent generators to fix a unique state")
    for i, a in enumerate(gens):
        for b in gens[i + 1 :]:
            if not commutes(a, b):
                raise OracleError(f"generators {a} and {b} anticommute")

    diagonal = [g for g in gens if g.x == 0]
    for e in range(1 << n):
        # a diagonal generator with eigenvalue -1 on |e> annihilates it
        if any(_diag_eigen(g, e, n) < 0 for g in diagonal):
            continue
        vec = np.zeros(1 << n, dtype=complex)
        vec[e] = 1
        s = StateVector(n, vec)
        for g in gens:
            s = StateVector(n, s.amplitudes + apply_pauli(g, s).amplitudes)
        if np.any(s.amplitudes != 0):
            return s
    raise OracleError("every basis ket is annihilated: -I is in the group")


def _diag_eigen(g: PauliOperator, e: int, n: int) -> int:
    par = (_index_mask(n, g.z) & e).bit_count() & 1
    return (1 if g.phase == 0 else -1) * (-1 if par else 1)


def fidelity(a: StateVector, b: StateVector) -> float:
    """``|<a|b>| / (|a| |b|)``; equals 1 iff the states are proportional."""
    if a.n != b.n:
        raise OracleError(f"states on {a.n} and {b.n} qubits")
    na, nb = a.norm, b.norm
    if na == 0 or nb == 0:
        raise OracleError("fidelity of a zero vector")
    return float(min(1.0, abs(np.vdot(a.amplitudes, b.amplitudes)) / (na * nb)))


def residual(p: PauliOperator, s: StateVector) -> float:
    """``|P psi - psi| / |psi|``."""
    return float(np.linalg.norm(apply_pauli(p, s).amplitudes - s.amplitudes) / s.norm)


def random_stabilizer_group(n: int, m: int, seed: int) -> list[PauliOperator]:
    """``m`` independent commuting Hermitian Paulis with random signs, by rejection sampling."""
    if not 1 <= m <= n:
        raise OracleError(f"need 1 <= m <= n, got n={n}, m={m}")
    rng = np.random.default_rng(seed)
    kept: list[PauliOperator] = []
    vecs: list[int] = []
    while len(kept) < m:
        x = int(rng.integers(0, 1 << n))
        z = int(rng.integers(0, 1 << n))
        sign = int(rng.integers(0, 2))
        if x == 0 and z == 0:
            continue
        cand = PauliOperator(n, x, z, 2 * sign)
        if not all(commutes(cand, k) for k in kept):
            continue
        v = x | (z << n)
        if gf2_rank(vecs + [v]) == len(vecs):
            continue
        kept.append(cand)
        vecs.append(v)
    return kept
