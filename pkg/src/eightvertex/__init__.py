"""Eight-vertex model toolkit: exact Holant evaluation, holographic transformations,
gadget reductions, 4-ary matchgate synthesis and complexity classification."""

from .classify import region_flags, verdict
from .geometry import decompose_minkowski
from .graphs import (HolantInstance, PortedGraph, holant, holant_bruteforce, holant_contract,
                     validate_graph, z_eight_vertex)
from .matchgate import (GeneralSignature8, Matchgate, attach_port_scaler, check_injection_mu,
                        flip_port, membership, signature, synthesize_even, synthesize_odd)
from .reductions import (GadgetParams, IsingGraph, chain_power, crossing_circuit_graph, g1_step,
                         g2_step, iterate_rounds, lift_to_four_regular, normalize_to_star,
                         verify_ising_identity, z_ising)
from .signature import (EQ2, NEQ2, Z_TRANSFORM, BinaryConnector, ConstraintFunction4, Transform2,
                        apply_holographic, compose_pair, eight_vertex_signature, parity_check,
                        permute_abc)

__version__ = "0.1.0"

__all__ = [
    "region_flags", "verdict", "decompose_minkowski",
    "HolantInstance", "PortedGraph", "holant", "holant_bruteforce", "holant_contract",
    "validate_graph", "z_eight_vertex",
    "GeneralSignature8", "Matchgate", "attach_port_scaler", "check_injection_mu", "flip_port",
    "membership", "signature", "synthesize_even", "synthesize_odd",
    "GadgetParams", "IsingGraph", "chain_power", "crossing_circuit_graph", "g1_step", "g2_step",
    "iterate_rounds", "lift_to_four_regular", "normalize_to_star", "verify_ising_identity", "z_ising",
    "EQ2", "NEQ2", "Z_TRANSFORM", "BinaryConnector", "ConstraintFunction4", "Transform2",
    "apply_holographic", "compose_pair", "eight_vertex_signature", "parity_check", "permute_abc",
]
