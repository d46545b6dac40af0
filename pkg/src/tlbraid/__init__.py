"""Braid quantum gates for multi-qudit registers built from the Temperley-Lieb algebra."""

from .connector import ConnectorGate, apply_connector, connect
from .gates import (
    GateParams,
    Involution,
    StructuredBraidGate,
    apply_gate,
    gate_to_dense,
    make_braid_gate,
    make_local_ops,
    make_tl_generators,
    realize_involution,
)
from .linalg import check_property, matrix_residual, tensor_product
from .register import QuditRegisterState, basis_state, overlap
from .states import (
    coefficients_closed_form,
    entanglement_entropy,
    generate_ghz,
    ghz_params,
    run_superposition_chain,
)
from .tla import TlaPair, check_braid, check_tla, jones_generators, solve_phase

__version__ = "0.1.0"

__all__ = [
    "ConnectorGate", "GateParams", "Involution", "QuditRegisterState", "StructuredBraidGate",
    "TlaPair", "apply_connector", "apply_gate", "basis_state", "check_braid", "check_property",
    "check_tla", "coefficients_closed_form", "connect", "entanglement_entropy", "gate_to_dense",
    "generate_ghz", "ghz_params", "jones_generators", "make_braid_gate", "make_local_ops",
    "make_tl_generators", "matrix_residual", "overlap", "realize_involution",
    "run_superposition_chain", "solve_phase", "tensor_product",
]
