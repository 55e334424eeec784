from .chain import chain_cmd
from .sweep import sweep_cmd
from .analyze import analyze_cmd
from .simulate import simulate_cmd
from .validate import validate_cmd

__all__ = [
    "analyze_cmd",
    "chain_cmd",
    "simulate_cmd",
    "sweep_cmd",
    "validate_cmd",
]
