"""Task-splitting scheduler and latency simulator for MEC-assisted holographic
streaming. Thin wrapper over the C++ core."""

from ._holosched import *  # noqa: F401,F403
from ._holosched import __doc__  # noqa: F401
