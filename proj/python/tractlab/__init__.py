"""Python bindings for the tractlab C++ core."""

from _tractlab import *  # noqa: F401,F403
