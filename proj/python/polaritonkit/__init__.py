"""Cavity-dressed trapped particles: polariton spectrum, observables and solvers."""

from ._core import *  # noqa: F401,F403
from ._core import __version__  # noqa: F401
