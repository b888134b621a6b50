"""Sparse random graph sampling, GCN forward passes, and transferability bounds."""

from ._core import *  # noqa: F401,F403
from ._core import __all__  # noqa: F401

__version__ = "0.1.0"
