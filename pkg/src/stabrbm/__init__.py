"""Exact RBM representations of stabilizer code states."""

from .checkmat import (
    CheckMatrix,
    LogicalSet,
    StandardForm,
    build_check_matrix,
    construct_logicals,
    gaussian_eliminate,
    group_contains,
)
from .compiler import EigenstateChoice, compile, run_pipeline
from .oracle import StateVector, fidelity, projector_state, random_stabilizer_group
from .pauli import BasisKet, PauliOperator, apply_to_ket, commutes, format_pauli, multiply, parse_pauli
from .rbm import HiddenUnit, RbmMachine, amplitude, deserialize, serialize, to_statevector

__all__ = [
    "BasisKet",
    "CheckMatrix",
    "EigenstateChoice",
    "HiddenUnit",
    "LogicalSet",
    "PauliOperator",
    "RbmMachine",
    "StandardForm",
    "StateVector",
    "amplitude",
    "apply_to_ket",
    "build_check_matrix",
    "commutes",
    "compile",
    "construct_logicals",
    "deserialize",
    "fidelity",
    "format_pauli",
    "gaussian_eliminate",
    "group_contains",
    "multiply",
    "parse_pauli",
    "projector_state",
    "random_stabilizer_group",
    "run_pipeline",
    "serialize",
    "to_statevector",
]
