import logging

from rich.theme import Theme
from rich.console import Console
from rich.logging import RichHandler

from ..types.diagnostic import Diagnostic

# one style per log level name, plus `success` for command summaries
THEME = Theme(
    {
        "debug": "grey54",
        "info": "cyan",
        "warning": "magenta",
        "error": "bold red",
        "critical": "bold red",
        "success": "bold cyan",
    }
)

# stdout carries records and CSV; everything human-facing goes to stderr
console = Console(theme=THEME, stderr=True)


class ShortLevelFormatter(logging.Formatter):
    """Adds `shortlevel`, the first letter of the level name, for `[%(shortlevel)s]` formats."""

    def format(self, record: logging.LogRecord) -> str:
        record.shortlevel = record.levelname[:1]
        return super().format(record)


class LevelStyledHandler(RichHandler):
    def emit(self, record: logging.LogRecord) -> None:
        try:
            line = self.format(record)
        except Exception:
            self.handleError(record)
            return
        self.console.print(line, style=record.levelname.lower(), markup=False, highlight=False)


rich_handler = LevelStyledHandler(console=console, show_time=False, show_level=False, show_path=False)


def print_diagnostic(diagnostic: Diagnostic) -> None:
    """Single machine-parseable line, `rtgq-error[<code>]: <message>`, on stderr."""
    console.print(diagnostic.line(), style="error", markup=False, highlight=False, soft_wrap=True)
