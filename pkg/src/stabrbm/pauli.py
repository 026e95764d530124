"""Signed n-qubit Pauli operators in binary symplectic form.

Qubit ``i`` (0-based) lives at bit ``i`` of the ``x`` and ``z`` integers.  The
operator represented is ``i**phase * P(x_0, z_0) (x) ... (x) P(x_{n-1}, z_{n-1})``
where ``P(1, 1)`` is the letter ``Y`` itself (not ``iXZ``).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

_LETTERS = {"I": (0, 0), "X": (1, 0), "Y": (1, 1), "Z": (0, 1)}
_LETTER_OF = {bits: letter for letter, bits in _LETTERS.items()}


class PauliError(ValueError):
    """Malformed Pauli string or operands of mismatched size."""


def _popcount(v: int) -> int:
    return v.bit_count()


@dataclass(frozen=True)
class PauliOperator:
    n: int
    x: int
    z: int
    phase: int = 0

    def __post_init__(self) -> None:
        if self.n < 1:
            raise PauliError(f"qubit count must be >= 1, got {self.n}")
        full = (1 << self.n) - 1
        if self.x & ~full or self.z & ~full or self.x < 0 or self.z < 0:
            raise PauliError("bit vectors exceed qubit count")
        object.__setattr__(self, "phase", self.phase % 4)

    @classmethod
    def from_bits(cls, x_bits: Sequence[int], z_bits: Sequence[int], phase: int = 0) -> PauliOperator:
        if len(x_bits) != len(z_bits):
            raise PauliError("x and z parts differ in length")
        x = sum(1 << i for i, b in enumerate(x_bits) if b)
        z = sum(1 << i for i, b in enumerate(z_bits) if b)
        return cls(len(x_bits), x, z, phase)

    @classmethod
    def identity(cls, n: int) -> PauliOperator:
        return cls(n, 0, 0, 0)

    @property
    def x_bits(self) -> tuple[int, ...]:
        return tuple((self.x >> i) & 1 for i in range(self.n))

    @property
    def z_bits(self) -> tuple[int, ...]:
        return tuple((self.z >> i) & 1 for i in range(self.n))

    @property
    def sign(self) -> int:
        """+1 or -1 for Hermitian operators."""
        if self.phase % 2:
            raise PauliError(f"operator with phase i^{self.phase} has no real sign")
        return 1 if self.phase == 0 else -1

    @property
    def is_hermitian(self) -> bool:
        return self.phase % 2 == 0

    @property
    def is_identity(self) -> bool:
        return self.x == 0 and self.z == 0

    def letter(self, i: int) -> str:
        return _LETTER_OF[((self.x >> i) & 1, (self.z >> i) & 1)]

    def letters(self) -> str:
        return "".join(self.letter(i) for i in range(self.n))

    def negate(self) -> PauliOperator:
        return PauliOperator(self.n, self.x, self.z, self.phase + 2)

    def with_phase(self, phase: int) -> PauliOperator:
        return PauliOperator(self.n, self.x, self.z, phase)

    def permute(self, perm: Sequence[int]) -> PauliOperator:
        """Move the letter at position ``perm[c]`` to position ``c``."""
        x = z = 0
        for c, src in enumerate(perm):
            x |= ((self.x >> src) & 1) << c
            z |= ((self.z >> src) & 1) << c
        return PauliOperator(self.n, x, z, self.phase)

    def __mul__(self, other: PauliOperator) -> PauliOperator:
        return multiply(self, other)

    def __str__(self) -> str:
        if self.is_hermitian:
            return format_pauli(self)
        return ("+i" if self.phase == 1 else "-i") + self.letters()


def parse_pauli(text: str) -> PauliOperator:
    """Parse ``[+-]?[IXYZ]+`` into an operator with phase 0 or 2."""
    body = text.strip()
    phase = 0
    offset = 0
    if body[:1] in ("+", "-"):
        phase = 2 if body[0] == "-" else 0
        body = body[1:]
        offset = 1
    if not body:
        raise PauliError(f"empty Pauli string {text!r}")
    x = z = 0
    for i, ch in enumerate(body):
        bits = _LETTERS.get(ch.upper())
        if bits is None:
            raise PauliError(f"illegal character {ch!r} at position {i + offset + 1} in {text!r}")
        x |= bits[0] << i
        z |= bits[1] << i
    return PauliOperator(len(body), x, z, phase)


def format_pauli(p: PauliOperator) -> str:
    if p.phase % 2:
        raise PauliError(f"non-Hermitian operator (phase i^{p.phase}) has no sign-letter form")
    return ("-" if p.phase == 2 else "") + p.letters()


def _check_sizes(a: PauliOperator, b: PauliOperator) -> None:
    if a.n != b.n:
        raise PauliError(f"qubit counts differ: {a.n} vs {b.n}")


def product_phase(x1: int, z1: int, x2: int, z2: int) -> int:
    """Quarter-turn phase picked up by the site-wise product of two letter strings.

    Cyclic pairs XY, YZ, ZX give ``+i``; the reversed pairs give ``-i``.
    """
    xo1, yo1, zo1 = x1 & ~z1, x1 & z1, z1 & ~x1
    xo2, yo2, zo2 = x2 & ~z2, x2 & z2, z2 & ~x2
    plus = (xo1 & yo2) | (yo1 & zo2) | (zo1 & xo2)
    minus = (yo1 & xo2) | (zo1 & yo2) | (xo1 & zo2)
    return (_popcount(plus) - _popcount(minus)) % 4


def multiply(a: PauliOperator, b: PauliOperator) -> PauliOperator:
    _check_sizes(a, b)
    phase = a.phase + b.phase + product_phase(a.x, a.z, b.x, b.z)
    return PauliOperator(a.n, a.x ^ b.x, a.z ^ b.z, phase)


def symplectic_product(a: PauliOperator, b: PauliOperator) -> int:
    _check_sizes(a, b)
    return (_popcount(a.x & b.z) + _popcount(a.z & b.x)) & 1


def commutes(a: PauliOperator, b: PauliOperator) -> bool:
    return symplectic_product(a, b) == 0


@dataclass(frozen=True)
class BasisKet:
    """Computational basis ket; bit ``i`` of ``bits`` is ``v_{i+1}``."""

    n: int
    bits: int

    @classmethod
    def from_string(cls, text: str) -> BasisKet:
        if not text or any(ch not in "01" for ch in text):
            raise PauliError(f"basis ket must be a nonempty 0/1 string, got {text!r}")
        return cls(len(text), sum(1 << i for i, ch in enumerate(text) if ch == "1"))

    def __str__(self) -> str:
        return "".join(str((self.bits >> i) & 1) for i in range(self.n))

    def bit(self, i: int) -> int:
        return (self.bits >> i) & 1


def apply_to_ket(p: PauliOperator, ket: BasisKet) -> tuple[BasisKet, int]:
    """Return ``(ket', e)`` with ``p|ket> = i**e |ket'>``."""
    if p.n != ket.n:
        raise PauliError(f"operator on {p.n} qubits applied to {ket.n}-qubit ket")
    y = p.x & p.z
    z_only = p.z & ~p.x
    v = ket.bits
    phase = p.phase + 2 * _popcount(z_only & v) + _popcount(y & ~v) + 3 * _popcount(y & v)
    return BasisKet(ket.n, v ^ p.x), phase % 4
