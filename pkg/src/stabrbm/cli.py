"""``stabrbm`` command line: compile, verify, eval, info.

Every failure prints exactly one line ``stabrbm: error[<kind>]: <message>`` on
stderr and exits with the code listed in ``EXIT_CODES``.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

from . import checkmat, compiler, oracle, rbm
from .pauli import PauliError, PauliOperator, format_pauli, parse_pauli

EXIT_CODES = {
    "parse": 2,
    "anticommuting": 3,
    "minus-identity": 4,
    "verify": 5,
    "too-large": 6,
}
TOLERANCE = 1e-9


class CliError(Exception):
    def __init__(self, kind: str, message: str) -> None:
        super().__init__(message)
        self.kind = kind

    @property
    def code(self) -> int:
        return EXIT_CODES[self.kind]


@dataclass
class StabilizerSource:
    path: Path
    generators: list[PauliOperator] = field(default_factory=list)
    lines: list[int] = field(default_factory=list)
    logical: list[str] | None = None
    logical_line: int | None = None

    @property
    def n(self) -> int:
        return self.generators[0].n


def parse_source(text: str, path: Path | str = "<input>") -> StabilizerSource:
    """Parse a ``.stab`` file.

    One generator per line (``[+-]?[IXYZ]+``), ``#`` starts a comment, blank
    lines are skipped, and ``!logical z+ x- ...`` sets the eigenstate choice.
    """
    src = StabilizerSource(Path(path))
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("!"):
            head, *rest = line[1:].split()
            if head != "logical":
                raise CliError("parse", f"{path}:{lineno}: unknown directive !{head}")
            if src.logical is not None:
                raise CliError("parse", f"{path}:{lineno}: duplicate !logical directive")
            src.logical = [t for tok in rest for t in tok.split(",") if t]
            src.logical_line = lineno
            continue
        try:
            g = parse_pauli(line)
        except PauliError as exc:
            raise CliError("parse", f"{path}:{lineno}: {exc}") from exc
        if src.generators and g.n != src.n:
            raise CliError("parse", f"{path}:{lineno}: generator has {g.n} qubits, expected {src.n}")
        src.generators.append(g)
        src.lines.append(lineno)
    if not src.generators:
        raise CliError("parse", f"{path}: no generators")
    return src


def load_source(path: str) -> StabilizerSource:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise CliError("parse", f"{path}: cannot read: {exc.strerror}") from exc
    return parse_source(text, path)


def _choice(src: StabilizerSource, flag: str | None, k: int) -> compiler.EigenstateChoice:
    tokens = [t for t in flag.split(",") if t] if flag is not None else src.logical
    if tokens is None:
        return compiler.EigenstateChoice.default(k)
    where = "--logical" if flag is not None else f"{src.path}:{src.logical_line}"
    try:
        choice = compiler.EigenstateChoice.from_tokens(tokens)
    except ValueError as exc:
        raise CliError("parse", f"{where}: {exc}") from exc
    if len(choice) != k:
        raise CliError("parse", f"{where}: {len(choice)} logical choices given, the code has k={k}")
    return choice


def _classify(src: StabilizerSource, exc: Exception) -> CliError:
    cause = exc.__cause__ if isinstance(exc, compiler.CompileError) else exc
    stage = getattr(exc, "stage", "build_check_matrix")
    if isinstance(cause, checkmat.AnticommutingGenerators):
        i, j = cause.pair
        return CliError(
            "anticommuting",
            f"{stage}: {src.path}:{src.lines[i]} and {src.path}:{src.lines[j]}: generators anticommute",
        )
    if isinstance(cause, checkmat.MinusIdentityInGroup):
        return CliError("minus-identity", f"{stage}: {src.path}: -I is generated by these stabilizers")
    return CliError("parse", f"{stage}: {src.path}: {exc}")


def _standard_form(src: StabilizerSource) -> checkmat.StandardForm:
    try:
        return checkmat.gaussian_eliminate(checkmat.build_check_matrix(src.generators))
    except checkmat.CheckMatrixError as exc:
        raise _classify(src, exc) from exc


def _compile(src: StabilizerSource, flag: str | None) -> compiler.Compilation:
    s = _standard_form(src)
    choice = _choice(src, flag, s.k)
    try:
        return compiler.run_pipeline(src.generators, choice)
    except compiler.CompileError as exc:
        raise _classify(src, exc) from exc


def cmd_compile(args: argparse.Namespace) -> int:
    src = load_source(args.input)
    comp = _compile(src, args.logical)
    out = Path(args.output) if args.output else Path(args.input).with_suffix(".rbm.json")
    out.write_bytes(rbm.serialize(comp.machine))
    s, f = comp.standard, comp.final
    n_pairs = len(comp.raw.pairs)
    print(f"n = {s.n}")
    print(f"standard form: p = {s.p}, q = {s.q}, k = {s.k}, discarded = {s.discarded_count}")
    print(f"eigenstate: {' '.join(comp.choice.tokens()) or '(no logical qubits)'}")
    print(f"final form: p = {f.p}, r = {f.r}")
    print(f"hidden units: {comp.machine.n_hidden} ({f.r} z-type, {n_pairs} from visible couplings)")
    print(f"bound p(p-1)/2 + r = {comp.hidden_bound}")
    print(f"wrote {out}")
    return 0


def load_machine(path: str) -> rbm.RbmMachine:
    try:
        data = Path(path).read_bytes()
    except OSError as exc:
        raise CliError("parse", f"{path}: cannot read: {exc.strerror}") from exc
    try:
        return rbm.deserialize(data)
    except rbm.MachineFormatError as exc:
        raise CliError("parse", f"{path}: {exc}") from exc


def cmd_verify(args: argparse.Namespace) -> int:
    src = load_source(args.input)
    machine = load_machine(args.machine)
    if src.n > args.max_qubits or machine.n_visible > args.max_qubits:
        raise CliError("too-large", f"{max(src.n, machine.n_visible)} qubits exceed --max-qubits {args.max_qubits}")
    if machine.n_visible != src.n:
        raise CliError("parse", f"{args.machine}: machine has {machine.n_visible} visible units, source has {src.n} qubits")
    comp = _compile(src, args.logical)
    state = rbm.to_statevector(machine, limit=args.max_qubits)
    if state.norm == 0:
        raise CliError("verify", f"{args.machine}: machine state is identically zero")

    ok = True
    checks = [(f"line {ln}", g) for ln, g in zip(src.lines, src.generators)]
    checks += [(f"logical {j + 1}", op) for j, op in enumerate(comp.chosen_logicals_original())]
    for label, op in checks:
        res = oracle.residual(op, state)
        passed = res <= TOLERANCE
        ok &= passed
        print(f"residual {label:<10} {format_pauli(op):<{src.n + 1}} {res:.3e} {'ok' if passed else 'FAIL'}")
    reference = oracle.projector_state(src.generators + comp.chosen_logicals_original())
    fid = oracle.fidelity(state, reference)
    fid_ok = fid >= 1 - TOLERANCE
    print(f"fidelity {fid:.17g} {'ok' if fid_ok else 'FAIL'}")
    if not (ok and fid_ok):
        raise CliError("verify", f"{args.machine}: machine state is not the requested code state")
    return 0


def cmd_eval(args: argparse.Namespace) -> int:
    machine = load_machine(args.machine)
    bits = args.bitstring
    if len(bits) != machine.n_visible or any(ch not in "01" for ch in bits):
        raise CliError("parse", f"bitstring {bits!r} must be {machine.n_visible} characters of 0/1")
    amp = rbm.amplitude(machine, bits)
    # adding 0.0 turns -0.0 into 0.0
    print(f"{amp.real + 0.0:.17g} {amp.imag + 0.0:.17g}")
    return 0


def cmd_info(args: argparse.Namespace) -> int:
    src = load_source(args.input)
    s = _standard_form(src)
    sys.stdout.write(checkmat.standard_form_report(s))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="stabrbm", description="Compile stabilizer code states into exact RBMs.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compile", help="compile a .stab file into a machine document")
    p.add_argument("input")
    p.add_argument("-o", "--output", help="machine document path (default: <input>.rbm.json)")
    p.add_argument("--logical", help="comma separated choices per logical qubit: z+, z-, x+, x-")
    p.set_defaults(func=cmd_compile)

    p = sub.add_parser("verify", help="check a machine against its stabilizers by brute force")
    p.add_argument("input")
    p.add_argument("machine")
    p.add_argument("--logical", help="eigenstate choice the machine was compiled with")
    p.add_argument("--max-qubits", type=int, default=rbm.DEFAULT_QUBIT_LIMIT)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("eval", help="print one amplitude as 're im'")
    p.add_argument("machine")
    p.add_argument("bitstring")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("info", help="report the standard form and logical operators")
    p.add_argument("input")
    p.set_defaults(func=cmd_info)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"stabrbm: error[{exc.kind}]: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
