"""Exception roots shared by every module.

Concrete errors are declared next to the code that raises them and derive
from one of the two roots below; the CLI maps the roots to exit codes
(``InputError`` -> 2, ``InvariantError`` -> 3).
"""

from __future__ import annotations


class PullbackError(Exception):
    """Base class for all library errors."""


class InputError(PullbackError, ValueError):
    """Malformed text or JSON input."""


class InvariantError(PullbackError, ValueError):
    """Well-formed input that violates a mathematical precondition."""
