"""Compile random stabilizer groups and check each machine by brute force.

    python scripts/random_sweep.py --seeds 500 --max-qubits 10 --csv sweep.csv
"""

from __future__ import annotations

import argparse
import csv
import time
from dataclasses import asdict, dataclass, fields

import numpy as np

from stabrbm.compiler import EigenstateChoice, run_pipeline
from stabrbm.oracle import fidelity, projector_state, random_stabilizer_group, residual
from stabrbm.rbm import to_statevector


@dataclass
class SweepConfig:
    seeds: int = 200
    min_qubits: int = 2
    max_qubits: int = 8
    first_seed: int = 0
    csv: str | None = None


@dataclass
class SweepRow:
    seed: int
    n: int
    m: int
    choice: str
    p: int
    r: int
    hidden: int
    bound: int
    max_residual: float
    fidelity: float
    seconds: float


def run_one(seed: int, cfg: SweepConfig) -> SweepRow:
    rng = np.random.default_rng(seed)
    n = int(rng.integers(cfg.min_qubits, cfg.max_qubits + 1))
    m = int(rng.integers(1, n + 1))
    gens = random_stabilizer_group(n, m, seed)
    choice = EigenstateChoice.from_tokens([str(t) for t in rng.choice(["z+", "z-", "x+", "x-"], size=n - m)])

    start = time.perf_counter()
    comp = run_pipeline(gens, choice)
    state = to_statevector(comp.machine)
    logicals = comp.chosen_logicals_original()
    res = max(residual(op, state) for op in gens + logicals)
    fid = fidelity(state, projector_state(gens + logicals))
    return SweepRow(
        seed=seed,
        n=n,
        m=m,
        choice=",".join(choice.tokens()),
        p=comp.final.p,
        r=comp.final.r,
        hidden=comp.machine.n_hidden,
        bound=comp.hidden_bound,
        max_residual=res,
        fidelity=fid,
        seconds=time.perf_counter() - start,
    )


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    for f in fields(SweepConfig):
        kind = int if f.type in ("int", int) else str
        parser.add_argument(f"--{f.name.replace('_', '-')}", type=kind, default=f.default)
    cfg = SweepConfig(**vars(parser.parse_args()))

    rows = [run_one(s, cfg) for s in range(cfg.first_seed, cfg.first_seed + cfg.seeds)]
    failures = [r for r in rows if r.max_residual > 1e-9 or r.fidelity < 1 - 1e-9 or r.hidden > r.bound]
    print(f"{len(rows)} groups, n in [{cfg.min_qubits}, {cfg.max_qubits}]")
    print(f"max residual  {max(r.max_residual for r in rows):.3e}")
    print(f"min fidelity  {min(r.fidelity for r in rows)!r}")
    print(f"hidden/bound  mean {np.mean([r.hidden / max(r.bound, 1) for r in rows]):.3f}")
    print(f"total time    {sum(r.seconds for r in rows):.2f}s")
    print(f"failures      {len(failures)}")
    if cfg.csv:
        with open(cfg.csv, "w", newline="") as fh:
            writer = csv.DictWriter(fh, fieldnames=list(asdict(rows[0])))
            writer.writeheader()
            writer.writerows(asdict(r) for r in rows)
    raise SystemExit(1 if failures else 0)


if __name__ == "__main__":
    main()
