"""Command line interface and session files."""
from .main import main, run_command
from .session import SessionInput, parse_data, parse_input, serialize_session

__all__ = ["main", "run_command", "SessionInput", "parse_data", "parse_input", "serialize_session"]
