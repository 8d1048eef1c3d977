"""Command-line frontend: script language, command dispatch, structured output."""
from .commands import execute
from .encode import graded, plain, presentation
from .dsl import DSLError, SessionScript, parse
from .fixtures import run_fixtures
from .main import dumps, main, render_text, run

__all__ = ["parse", "run", "main", "dumps", "render_text", "execute", "run_fixtures", "graded", "plain",
           "presentation", "DSLError", "SessionScript"]
