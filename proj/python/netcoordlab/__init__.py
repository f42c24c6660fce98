"""Pure Nash equilibrium lab for network coordination games.

Exact-rational better-response dynamics, smoothed instance generation,
transformation-vector sequence analysis, d-flip local max cut, the
smoothness-preserving reductions, and (k,l)-congestion games.
"""

from ._netcoordlab import *  # noqa: F401,F403
from ._netcoordlab import __version__  # noqa: F401
