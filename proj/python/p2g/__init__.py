"""Package-to-group repository analytics.

Thin wrapper over the native extension. The heavy lifting (metadata
parsing, GValue scoring, evolution diffing, LDA topics) lives in C++;
this package re-exports it under a stable name.
"""

from p2g._p2g import *  # noqa: F401,F403
from p2g._p2g import __version__  # noqa: F401
