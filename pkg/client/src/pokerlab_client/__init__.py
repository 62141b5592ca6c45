"""Client SDK for the pokerlab solver service and match bridge protocol."""

from .bridge import ProtocolViolation, run_bridge_agent
from .client import (
    ClientConfig,
    ClientError,
    ServiceError,
    SolverClient,
    SolverResult,
    TransportError,
    canonical_dumps,
)

__version__ = "0.1.0"
__all__ = [
    "ClientConfig", "ClientError", "ServiceError", "SolverClient",
    "SolverResult", "TransportError", "ProtocolViolation",
    "run_bridge_agent", "canonical_dumps",
]
