"""Counts of rational planar cuspidal curves in P3 through generic lines and points."""
from .errors import CuspCountError, EngineError, StoreError, ValidationError
from .gw_base import BaseNumbers, GWEngine, ProviderConfig, base_number
from .cusp_pipeline import CuspResult, cusp_count, cusp_table, valid_pairs
from .session import Session
from .taut import Tautological, phi

__all__ = [
    "BaseNumbers", "CuspCountError", "CuspResult", "EngineError", "GWEngine", "ProviderConfig",
    "Session", "StoreError", "Tautological", "ValidationError", "base_number", "cusp_count",
    "cusp_table", "phi", "valid_pairs",
]
__version__ = "0.1.0"
