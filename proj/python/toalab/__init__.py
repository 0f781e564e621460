"""Quantum time-of-arrival distributions for Gaussian wave packets."""

from ._toalab import *  # noqa: F401,F403
from ._toalab import __version__  # noqa: F401
