"""Initialize the utils package"""

from .logs import set_log_level, setup_logging
from .console import console, print_diagnostic

__all__ = [
    "console",
    "print_diagnostic",
    "set_log_level",
    "setup_logging",
]
