"""Burst detection, carrier-frequency estimation, and Doppler positioning
bounds for LEO communication signals.

The heavy lifting lives in the compiled extension; this package re-exports
its surface.
"""

from ._starburst import *  # noqa: F401,F403
from ._starburst import __doc__ as _core_doc  # noqa: F401

__all__ = [name for name in dir() if not name.startswith("_")]
