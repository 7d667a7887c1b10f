"""Biphoton polarization qutrits: Schmidt modes, operator factorization,
Poincare-sphere geometry and a coincidence measurement simulator."""

from biphoton._core import *  # noqa: F401,F403
from biphoton._core import __doc__  # noqa: F401

__version__ = "0.1.0"
