"""Brill-Noether loci on chains of cycles, computed exactly."""
from .chain import AbstractChain, Cycle, CyclePoint, MetricChain, TorsionProfile, chain_from_json
from .divisors import BridgePoint, ChainDivisor, StandardForm
from .partitions import Partition, ResidueSet
from .tableaux import DisplacementTableau

__version__ = "0.1.0"

__all__ = [
    "AbstractChain",
    "BridgePoint",
    "ChainDivisor",
    "Cycle",
    "CyclePoint",
    "DisplacementTableau",
    "MetricChain",
    "Partition",
    "ResidueSet",
    "StandardForm",
    "TorsionProfile",
    "chain_from_json",
]
