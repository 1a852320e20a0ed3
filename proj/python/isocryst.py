"""Python interface: re-exports the _isocryst extension module."""

from _isocryst import *  # noqa: F401,F403
from _isocryst import __version__  # noqa: F401
