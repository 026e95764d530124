"""Check matrices, phase-tracked Gaussian elimination and logical operators.

Rows are :class:`PauliOperator` values, so adding one row to another is an
operator product and the sign bookkeeping comes for free.  Column swaps
relabel qubits; ``col_perm[c]`` is the original (0-based) qubit label of the
current column ``c``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .pauli import PauliOperator, commutes, format_pauli, multiply


class CheckMatrixError(ValueError):
    """Base class for invalid generator sets."""


class AnticommutingGenerators(CheckMatrixError):
    def __init__(self, i: int, j: int) -> None:
        super().__init__(f"generators {i + 1} and {j + 1} anticommute")
        self.pair = (i, j)


class MinusIdentityInGroup(CheckMatrixError):
    def __init__(self) -> None:
        super().__init__("-I is in the generated group (generators are inconsistent)")


def _swap_bits(v: int, a: int, b: int) -> int:
    if ((v >> a) ^ (v >> b)) & 1:
        v ^= (1 << a) | (1 << b)
    return v


def _swap_columns(row: PauliOperator, a: int, b: int) -> PauliOperator:
    return PauliOperator(row.n, _swap_bits(row.x, a, b), _swap_bits(row.z, a, b), row.phase)


@dataclass(frozen=True)
class CheckMatrix:
    n: int
    rows: tuple[PauliOperator, ...]
    col_perm: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if not self.col_perm:
            object.__setattr__(self, "col_perm", tuple(range(self.n)))
        if sorted(self.col_perm) != list(range(self.n)):
            raise CheckMatrixError(f"column permutation {self.col_perm} is not a bijection")

    def bit_rows(self) -> list[int]:
        """Rows packed as ``x | z << n``."""
        return [r.x | (r.z << self.n) for r in self.rows]

    def original_rows(self) -> list[PauliOperator]:
        """Rows re-expressed in the original qubit labelling."""
        inv = inverse_permutation(self.col_perm)
        return [r.permute(inv) for r in self.rows]


def inverse_permutation(perm: Sequence[int]) -> tuple[int, ...]:
    inv = [0] * len(perm)
    for c, label in enumerate(perm):
        inv[label] = c
    return tuple(inv)


def build_check_matrix(generators: Iterable[PauliOperator]) -> CheckMatrix:
    gens = tuple(generators)
    if not gens:
        raise CheckMatrixError("at least one generator is required")
    n = gens[0].n
    for i, g in enumerate(gens):
        if g.n != n:
            raise CheckMatrixError(f"generator {i + 1} acts on {g.n} qubits, expected {n}")
        if not g.is_hermitian:
            raise CheckMatrixError(f"generator {i + 1} has non-Hermitian phase i^{g.phase}")
    for i in range(len(gens)):
        for j in range(i + 1, len(gens)):
            if not commutes(gens[i], gens[j]):
                raise AnticommutingGenerators(i, j)
    return CheckMatrix(n, gens)


@dataclass(frozen=True)
class StandardForm:
    """Generators in the block layout

    ``(I_p B1 B2 | C1 0 D3)`` over ``(0 0 0 | E1 I_q F1)``

    with column blocks of widths ``p``, ``q``, ``k``.
    """

    n: int
    p: int
    q: int
    rows: tuple[PauliOperator, ...]
    col_perm: tuple[int, ...]
    discarded_count: int = 0

    @property
    def k(self) -> int:
        return self.n - self.p - self.q

    @property
    def x_rows(self) -> tuple[PauliOperator, ...]:
        return self.rows[: self.p]

    @property
    def z_rows(self) -> tuple[PauliOperator, ...]:
        return self.rows[self.p :]

    def as_check_matrix(self) -> CheckMatrix:
        return CheckMatrix(self.n, self.rows, self.col_perm)

    def original_rows(self) -> list[PauliOperator]:
        return self.as_check_matrix().original_rows()

    def _block(self, rows: Sequence[PauliOperator], part: str, c0: int, c1: int) -> list[list[int]]:
        return [[(getattr(r, part) >> c) & 1 for c in range(c0, c1)] for r in rows]

    # Named blocks, addressed as bit matrices (lists of rows).
    @property
    def B1(self) -> list[list[int]]:
        return self._block(self.x_rows, "x", self.p, self.p + self.q)

    @property
    def B2(self) -> list[list[int]]:
        return self._block(self.x_rows, "x", self.p + self.q, self.n)

    @property
    def C1(self) -> list[list[int]]:
        return self._block(self.x_rows, "z", 0, self.p)

    @property
    def D1(self) -> list[list[int]]:
        return self._block(self.x_rows, "z", self.p, self.p + self.q)

    @property
    def D3(self) -> list[list[int]]:
        return self._block(self.x_rows, "z", self.p + self.q, self.n)

    @property
    def E1(self) -> list[list[int]]:
        return self._block(self.z_rows, "z", 0, self.p)

    @property
    def F1(self) -> list[list[int]]:
        return self._block(self.z_rows, "z", self.p + self.q, self.n)

    def check_shape(self) -> None:
        """Raise ``AssertionError`` unless the block layout holds bit-exactly."""
        p, q = self.p, self.q
        assert len(self.rows) == p + q
        for i, r in enumerate(self.x_rows):
            assert r.x & ((1 << p) - 1) == 1 << i, f"x-part of row {i} is not I_p"
            assert not any(self.D1[i]), f"D1 not cleared in row {i}"
        for s, r in enumerate(self.z_rows):
            assert r.x == 0, f"z-type row {p + s} has an x-part"
            window = (r.z >> p) & ((1 << q) - 1)
            assert window == 1 << s, f"z-part of row {p + s} is not I_q"


def _eliminate(
    rows: list[PauliOperator],
    perm: list[int],
    part: str,
    start_row: int,
    start_col: int,
) -> int:
    """Reduce ``part`` of ``rows[start_row:]`` to an identity starting at ``start_col``.

    Pivot rows are swapped into place and every other row in the window has
    the pivot column cleared.  A missing pivot column is exchanged with the
    nearest column to its right holding a 1 in an unpivoted row.  Returns the
    number of pivots.
    """
    n = len(perm)
    rank = 0
    while start_row + rank < len(rows) and start_col + rank < n:
        r0 = start_row + rank
        col = start_col + rank
        found = None
        for c in range(col, n):
            for r in range(r0, len(rows)):
                if (getattr(rows[r], part) >> c) & 1:
                    found = (r, c)
                    break
            if found:
                break
        if found is None:
            break
        r, c = found
        if c != col:
            rows[:] = [_swap_columns(row, c, col) for row in rows]
            perm[c], perm[col] = perm[col], perm[c]
        rows[r0], rows[r] = rows[r], rows[r0]
        pivot = rows[r0]
        for t in range(start_row, len(rows)):
            if t != r0 and (getattr(rows[t], part) >> col) & 1:
                rows[t] = multiply(rows[t], pivot)
        rank += 1
    return rank


def gaussian_eliminate(m: CheckMatrix) -> StandardForm:
    rows = list(m.rows)
    perm = list(m.col_perm)
    n = m.n

    p = _eliminate(rows, perm, "x", 0, 0)
    q = _eliminate(rows, perm, "z", p, p)

    # clear D1 with the I_q block
    for i in range(p):
        for s in range(q):
            if (rows[i].z >> (p + s)) & 1:
                rows[i] = multiply(rows[i], rows[p + s])

    discarded = 0
    for r in rows[p + q :]:
        # commutation with the x-type rows forces leftovers to be +-I
        assert r.is_identity, "non-identity row survived elimination"
        if r.phase != 0:
            raise MinusIdentityInGroup()
        discarded += 1

    return StandardForm(n, p, q, tuple(rows[: p + q]), tuple(perm), discarded)


@dataclass(frozen=True)
class LogicalSet:
    x_logicals: tuple[PauliOperator, ...] = field(default_factory=tuple)
    z_logicals: tuple[PauliOperator, ...] = field(default_factory=tuple)

    @property
    def k(self) -> int:
        return len(self.x_logicals)


def construct_logicals(s: StandardForm) -> LogicalSet:
    """Logical X/Z representatives ``(0 F1^T I | D3^T 0 0)`` and ``(0 0 0 | B2^T 0 I)``.

    Operators are returned in the permuted column order of ``s``.
    """
    p, q, n = s.p, s.q, s.n
    D3, F1, B2 = s.D3, s.F1, s.B2
    xs, zs = [], []
    for j in range(s.k):
        col = p + q + j
        x = 1 << col
        z = 0
        for sidx in range(q):
            x |= F1[sidx][j] << (p + sidx)
        for i in range(p):
            z |= D3[i][j] << i
        xs.append(PauliOperator(n, x, z, 0))

        zz = 1 << col
        for i in range(p):
            zz |= B2[i][j] << i
        zs.append(PauliOperator(n, 0, zz, 0))
    return LogicalSet(tuple(xs), tuple(zs))


def _rows_of(group: StandardForm | CheckMatrix) -> list[PauliOperator]:
    return group.original_rows()


def group_contains(group: StandardForm | CheckMatrix, p: PauliOperator) -> tuple[bool, bool]:
    """Whether ``p`` (original qubit labels) lies in the group, and with the right sign.

    The second flag is meaningful only when the first is true.
    """
    rows = _rows_of(group)
    n = p.n
    # forward elimination carrying the set of source rows as a bitmask
    basis: list[tuple[int, int, int]] = []  # (pivot bit, vector, combo)
    for idx, r in enumerate(rows):
        vec = r.x | (r.z << n)
        combo = 1 << idx
        for piv, bvec, bcombo in basis:
            if (vec >> piv) & 1:
                vec ^= bvec
                combo ^= bcombo
        if vec:
            basis.append(((vec & -vec).bit_length() - 1, vec, combo))

    target = p.x | (p.z << n)
    combo = 0
    for piv, bvec, bcombo in basis:
        if (target >> piv) & 1:
            target ^= bvec
            combo ^= bcombo
    if target:
        return False, False

    prod = PauliOperator.identity(n)
    for idx, r in enumerate(rows):
        if (combo >> idx) & 1:
            prod = multiply(prod, r)
    return True, prod.phase == p.phase


def format_bit_matrix(block: list[list[int]], indent: str = "    ") -> list[str]:
    if not block or not block[0]:
        return [indent + "(empty)"]
    return [indent + " ".join(str(b) for b in row) for row in block]


def standard_form_report(s: StandardForm, logicals: LogicalSet | None = None) -> str:
    """Human readable summary used by the ``info`` command."""
    lines = [
        f"n = {s.n}",
        f"p = {s.p}",
        f"q = {s.q}",
        f"k = {s.k}",
        f"discarded dependent rows: {s.discarded_count}",
        "qubit order (column -> original label, 1-based): "
        + " ".join(str(c + 1) for c in s.col_perm),
        "generators (permuted columns):",
    ]
    lines += ["    " + format_pauli(r) for r in s.rows]
    for name in ("B1", "B2", "C1", "D3", "E1", "F1"):
        lines.append(f"{name}:")
        lines += format_bit_matrix(getattr(s, name))
    if logicals is None:
        logicals = construct_logicals(s)
    if logicals.k == 0:
        lines.append("no logical qubits")
    else:
        inv = inverse_permutation(s.col_perm)
        for j, (xl, zl) in enumerate(zip(logicals.x_logicals, logicals.z_logicals)):
            lines.append(f"logical {j + 1}: X = {format_pauli(xl.permute(inv))}  Z = {format_pauli(zl.permute(inv))}")
    return "\n".join(lines) + "\n"
