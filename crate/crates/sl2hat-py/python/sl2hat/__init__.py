"""Exact computations for the affine Lie algebra sl2-hat."""

from ._sl2hat import *  # noqa: F401,F403
from ._sl2hat import __all__, __version__  # noqa: F401
