"""Python bindings for the slicelab C++ core.

Symmetric inputs are 2-d float arrays; spectral functions are given as
strings such as ``"identity"``, ``"log"``, ``"exp"``, ``"pow:3/2"`` or
``"poly:1,0,2"``. Library failures raise :class:`SlicelabError`, whose
``kind`` attribute names the failure (``"SingularMatrix"``, ...).
"""

from ._slicelab import *  # noqa: F401,F403
from ._slicelab import SlicelabError

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
