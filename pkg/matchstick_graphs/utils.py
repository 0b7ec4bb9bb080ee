"""
Utility functions for the Matchstick Graphs command line.
"""

import sys
from pathlib import Path


class UsageError(ValueError):
    """A command-line argument is malformed or inconsistent."""


def parse_param_overrides(items):
    """Turn ['mu=38.0', ...] into {'mu': 38.0}."""
    overrides = {}
    for item in items or []:
        name, sep, value = item.partition("=")
        name = name.strip()
        if not sep or not name:
            raise UsageError(f"--param expects NAME=VALUE, got {item!r}")
        try:
            overrides[name] = float(value)
        except ValueError:
            raise UsageError(f"--param {name}: {value!r} is not a number") from None
    return overrides


def check_param_names(overrides, construction):
    """Reject overrides naming parameters the construction does not declare."""
    unknown = sorted(set(overrides) - set(construction.parameters))
    if unknown:
        declared = ", ".join(construction.parameters) or "none"
        raise UsageError(f"undeclared parameter(s) {', '.join(unknown)}; declared: {declared}")


def read_input(path):
    """Read a text input file, reporting a missing file as a usage problem."""
    file_path = Path(path)
    if not file_path.exists():
        raise UsageError(f"input file does not exist: {file_path}")
    return file_path.read_text(encoding="utf-8")


def write_output(text, path=None):
    """Write text to `path`, or to standard output when no path is given."""
    if path is None or path == "-":
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")
        return
    Path(path).write_text(text if text.endswith("\n") else text + "\n", encoding="utf-8")
