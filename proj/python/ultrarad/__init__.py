"""Radially symmetric ultra-relativistic Euler equations: scheme, linearized
exact solutions and diagnostics."""

from ._core import *  # noqa: F401,F403
from ._core import __doc__  # noqa: F401
