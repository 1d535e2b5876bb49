"""Finite element solver for the non-isothermal Cahn-Hilliard system."""

from ._nchsim import *  # noqa: F401,F403
from ._nchsim import __version__  # noqa: F401
