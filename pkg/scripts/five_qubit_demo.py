"""Walk the [[5,1,3]] code through every compiler stage and print the intermediates."""

from __future__ import annotations

import argparse
from dataclasses import dataclass

import numpy as np

from stabrbm.compiler import EigenstateChoice, run_pipeline
from stabrbm.pauli import format_pauli, parse_pauli
from stabrbm.rbm import to_statevector

GENERATORS = ["XZZXI", "IXZZX", "XIXZZ", "ZXIXZ"]


@dataclass
class DemoConfig:
    logical: str = "x+"


def closed_form() -> np.ndarray:
    out = np.empty(32, dtype=complex)
    for idx in range(32):
        v = [(idx >> (4 - i)) & 1 for i in range(5)]
        out[idx] = (-1) ** sum(v[i] * v[(i + 1) % 5] for i in range(5))
    return out


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--logical", default=DemoConfig.logical, choices=["z+", "z-", "x+", "x-"])
    cfg = DemoConfig(**vars(parser.parse_args()))

    comp = run_pipeline([parse_pauli(g) for g in GENERATORS], EigenstateChoice.from_tokens([cfg.logical]))
    print("standard form:", " ".join(format_pauli(r) for r in comp.standard.rows))
    print("logical X / Z:", format_pauli(comp.logicals.x_logicals[0]), format_pauli(comp.logicals.z_logicals[0]))
    print(f"final form (p={comp.final.p}, r={comp.final.r}):")
    for row in comp.final.x_rows + comp.final.z_rows:
        print("   ", format_pauli(row))
    print("i*pi couplings:", sorted((k + 1, j + 1) for k, j in comp.raw.pairs))
    print(f"hidden units: {comp.machine.n_hidden} (bound {comp.hidden_bound})")

    amps = to_statevector(comp.machine).amplitudes
    amps = amps / amps[np.flatnonzero(np.abs(amps) > 1e-12)[0]]
    print("normalized amplitudes:", np.round(amps.real, 12).astype(int).tolist() if np.allclose(amps.imag, 0) else amps)
    if cfg.logical == "x+":
        print("max deviation from exp(i*pi*(v1v2+v2v3+v3v4+v4v5+v5v1)):", np.max(np.abs(amps - closed_form())))


if __name__ == "__main__":
    main()
