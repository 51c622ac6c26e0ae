"""Exact computations on rational elliptic surfaces over Q(t)."""
from .kodaira import InconsistencyError, KodairaType, fiber_configuration
from .kernels import BACKEND
from .mordell_weil import solve_torsion
from .report import analyze, analyze_model
from .weierstrass import WeierstrassModel

__all__ = [
    "BACKEND",
    "InconsistencyError",
    "KodairaType",
    "WeierstrassModel",
    "analyze",
    "analyze_model",
    "fiber_configuration",
    "solve_torsion",
]
__version__ = "0.1.0"
