"""Stabilizer generators -> exact RBM parameters for one code state."""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .checkmat import (
    CheckMatrix,
    CheckMatrixError,
    LogicalSet,
    StandardForm,
    build_check_matrix,
    construct_logicals,
    gaussian_eliminate,
    inverse_permutation,
)
from .pauli import PauliOperator
from .rbm import HiddenUnit, RbmMachine, quarter_turns

LN2 = math.log(2.0)
_TOKENS = {"z+": ("Z", 1), "z-": ("Z", -1), "x+": ("X", 1), "x-": ("X", -1)}


class CompileError(ValueError):
    """A pipeline stage rejected its input; ``stage`` names it."""

    def __init__(self, stage: str, message: str) -> None:
        super().__init__(f"{stage}: {message}")
        self.stage = stage


@dataclass(frozen=True)
class EigenstateChoice:
    """Per logical qubit: which logical operator to fix (``"Z"``/``"X"``) and its eigenvalue."""

    choices: tuple[tuple[str, int], ...] = ()

    def __post_init__(self) -> None:
        for op, sign in self.choices:
            if op not in ("Z", "X") or sign not in (1, -1):
                raise ValueError(f"invalid eigenstate choice ({op!r}, {sign!r})")

    @classmethod
    def default(cls, k: int) -> EigenstateChoice:
        return cls((("Z", 1),) * k)

    @classmethod
    def from_tokens(cls, tokens: Iterable[str]) -> EigenstateChoice:
        out = []
        for tok in tokens:
            key = tok.strip().lower()
            if key not in _TOKENS:
                raise ValueError(f"unknown logical choice {tok!r} (expected z+, z-, x+ or x-)")
            out.append(_TOKENS[key])
        return cls(tuple(out))

    @classmethod
    def from_assignments(cls, k: int, assignments: Iterable[tuple[int, str, int]]) -> EigenstateChoice:
        """Build from ``(logical index, op, sign)`` triples; unassigned qubits default to ``Z+``."""
        slots: dict[int, tuple[str, int]] = {}
        for j, op, sign in assignments:
            if not 0 <= j < k:
                raise ValueError(f"logical index {j} out of range for k={k}")
            if j in slots and slots[j] != (op, sign):
                raise ValueError(f"conflicting choices for logical qubit {j + 1}: {slots[j]} and {(op, sign)}")
            slots[j] = (op, sign)
        return cls(tuple(slots.get(j, ("Z", 1)) for j in range(k)))

    def tokens(self) -> list[str]:
        return [f"{op.lower()}{'+' if s > 0 else '-'}" for op, s in self.choices]

    def __len__(self) -> int:
        return len(self.choices)


def chosen_logicals(logicals: LogicalSet, choice: EigenstateChoice) -> list[PauliOperator]:
    """The signed logical operators fixed by ``choice`` (in the logicals' column order)."""
    if len(choice) != logicals.k:
        raise CompileError(
            "select_eigenstate", f"eigenstate choice covers {len(choice)} logical qubits, code has {logicals.k}"
        )
    ops = []
    for j, (op, sign) in enumerate(choice.choices):
        base = logicals.z_logicals[j] if op == "Z" else logicals.x_logicals[j]
        ops.append(base if sign > 0 else base.negate())
    return ops


def select_eigenstate(s: StandardForm, logicals: LogicalSet, choice: EigenstateChoice) -> CheckMatrix:
    rows = s.rows + tuple(chosen_logicals(logicals, choice))
    return CheckMatrix(s.n, rows, s.col_perm)


@dataclass(frozen=True)
class FinalForm:
    """``(I_p B | C 0)`` x-type rows over ``(0 0 | E I_r)`` z-type rows."""

    n: int
    p: int
    x_rows: tuple[PauliOperator, ...]
    z_rows: tuple[PauliOperator, ...]
    col_perm: tuple[int, ...]

    @property
    def r(self) -> int:
        return self.n - self.p

    @property
    def C(self) -> list[list[int]]:
        return [[(row.z >> c) & 1 for c in range(self.p)] for row in self.x_rows]

    def check_shape(self) -> None:
        p, r = self.p, self.r
        low = (1 << p) - 1
        for j, row in enumerate(self.x_rows):
            assert row.x & low == 1 << j, f"x-part of x-type row {j} is not I_p"
            assert row.z >> p == 0, f"z-part of x-type row {j} is nonzero on the last r columns"
        for s, row in enumerate(self.z_rows):
            assert row.x == 0, f"z-type row {s} has an x-part"
            assert row.z >> p == 1 << s, f"z-part of z-type row {s} is not I_r"
        c = self.C
        for i in range(p):
            for j in range(i):
                assert c[i][j] == c[j][i], f"C block asymmetric at ({i}, {j})"
        assert len(self.z_rows) == r


def finalize_form(m: CheckMatrix) -> FinalForm:
    try:
        s = gaussian_eliminate(m)
    except CheckMatrixError as exc:
        raise CompileError("finalize_form", str(exc)) from exc
    if s.k != 0:
        raise CompileError(
            "finalize_form", f"rank {s.p + s.q} < {s.n}: the chosen generators do not fix a unique state"
        )
    return FinalForm(s.n, s.p, s.x_rows, s.z_rows, s.col_perm)


@dataclass(frozen=True)
class RawCouplings:
    """Pre-conversion parameters in exact units.

    ``bias_quarters[j]`` is the visible bias of column ``j`` in units of ``i*pi/2``
    (mod 4); ``pairs`` holds column pairs ``(k, j)``, ``k < j``, coupled by ``i*pi``.
    """

    n: int
    bias_quarters: tuple[int, ...]
    pairs: frozenset[tuple[int, int]] = field(default_factory=frozenset)

    @property
    def visible_bias(self) -> list[complex]:
        return [quarter_turns(q) for q in self.bias_quarters]

    @property
    def pair_couplings(self) -> dict[tuple[int, int], complex]:
        return {pair: complex(0.0, math.pi) for pair in sorted(self.pairs)}


def compile_x_type(f: FinalForm) -> RawCouplings:
    quarters = [0] * f.n
    pairs: set[tuple[int, int]] = set()
    for j, row in enumerate(f.x_rows):
        for k in range(j):
            if row.letter(k) == "Z":
                pairs.add((k, j))
        if row.letter(j) == "Y":
            quarters[j] += 1
        if row.phase == 2:
            quarters[j] += 2
    return RawCouplings(f.n, tuple(q % 4 for q in quarters), frozenset(pairs))


def compile_z_type(f: FinalForm) -> list[HiddenUnit]:
    """One parity unit per z-type row; indices are 0-based columns."""
    units = []
    for s, row in enumerate(f.z_rows):
        sites = [f.p + s] + [k for k in range(f.p) if row.letter(k) == "Z"]
        weights = {k: complex(0.0, math.pi) for k in sorted(sites)}
        units.append(HiddenUnit(quarter_turns(row.phase), weights))
    return units


@dataclass(frozen=True)
class CouplingUnit:
    """Hidden unit replacing ``exp(J v_j v_k)``.

    ``exp(log_prefactor + visible_shift*(v_j+v_k)) * (1 + exp(bias + weight*(v_j+v_k)))``
    equals ``exp(J v_j v_k)`` on all four configurations.
    """

    bias: complex
    weight: complex
    visible_shift: complex
    log_prefactor: complex

    def factor(self, vj: int, vk: int) -> complex:
        s = vj + vk
        return cmath.exp(self.log_prefactor + self.visible_shift * s) * (1 + cmath.exp(self.bias + self.weight * s))


def coupling_unit(J: complex) -> CouplingUnit:
    """Trade a visible-visible coupling for one 0/1 hidden unit.

    With ``c = i*acos(exp(J/2))`` (principal branch) the ±1 hidden-unit
    solution ``a = -d = -J/2``, ``b = -c`` becomes, for ``h in {0, 1}``: bias
    ``2c``, weights ``-2c``, visible shift ``J/2 + c`` and constant
    ``-J/2 - ln 2 - c``.
    """
    J = complex(J)
    c = 1j * cmath.acos(cmath.exp(J / 2))
    return CouplingUnit(bias=2 * c, weight=-2 * c, visible_shift=J / 2 + c, log_prefactor=-J / 2 - LN2 - c)


def convert_visible_couplings(raw: RawCouplings) -> tuple[list[complex], list[HiddenUnit], complex]:
    """Replace every pair coupling with a hidden unit.

    Returns ``(visible_bias, hidden_units, log_prefactor)`` on 0-based columns.
    """
    bias = raw.visible_bias
    units = []
    log_pref = 0j
    for (k, j), J in raw.pair_couplings.items():
        u = coupling_unit(J)
        units.append(HiddenUnit(u.bias, {k: u.weight, j: u.weight}))
        bias[k] += u.visible_shift
        bias[j] += u.visible_shift
        log_pref += u.log_prefactor
    return bias, units, log_pref


@dataclass(frozen=True)
class Compilation:
    """Every intermediate of one compile run, kept for reports and tests."""

    generators: tuple[PauliOperator, ...]
    standard: StandardForm
    logicals: LogicalSet
    choice: EigenstateChoice
    final: FinalForm
    raw: RawCouplings
    machine: RbmMachine

    @property
    def hidden_bound(self) -> int:
        p = self.final.p
        return p * (p - 1) // 2 + self.final.r

    def chosen_logicals_original(self) -> list[PauliOperator]:
        """Signed logicals fixed by the choice, in original qubit labels."""
        inv = inverse_permutation(self.standard.col_perm)
        return [op.permute(inv) for op in chosen_logicals(self.logicals, self.choice)]


def run_pipeline(generators: Sequence[PauliOperator], choice: EigenstateChoice | None = None) -> Compilation:
    gens = tuple(generators)
    try:
        m = build_check_matrix(gens)
    except CheckMatrixError as exc:
        raise CompileError("build_check_matrix", str(exc)) from exc
    try:
        s = gaussian_eliminate(m)
    except CheckMatrixError as exc:
        raise CompileError("gaussian_eliminate", str(exc)) from exc
    logicals = construct_logicals(s)
    if choice is None:
        choice = EigenstateChoice.default(s.k)
    stacked = select_eigenstate(s, logicals, choice)
    final = finalize_form(stacked)
    raw = compile_x_type(final)
    z_units = compile_z_type(final)
    bias, pair_units, log_pref = convert_visible_couplings(raw)

    # columns back to original qubit labels (1-based in the machine)
    perm = final.col_perm
    n = final.n
    visible = [0j] * n
    for c, label in enumerate(perm):
        visible[label] = bias[c]
    hidden = tuple(
        HiddenUnit(u.bias, {perm[c] + 1: w for c, w in sorted(u.weights.items(), key=lambda kv: perm[kv[0]])})
        for u in z_units + pair_units
    )
    machine = RbmMachine(
        n_visible=n,
        visible_bias=tuple(visible),
        hidden=hidden,
        log_prefactor=log_pref,
        qubit_order=tuple(label + 1 for label in perm),
    )
    bound = final.p * (final.p - 1) // 2 + final.r
    if len(hidden) > bound:
        raise CompileError("compile", f"{len(hidden)} hidden units exceed the bound {bound}")
    return Compilation(gens, s, logicals, choice, final, raw, machine)


def compile(generators: Sequence[PauliOperator], choice: EigenstateChoice | None = None) -> RbmMachine:
    """Compile commuting generators plus an eigenstate choice into an RBM."""
    return run_pipeline(generators, choice).machine
