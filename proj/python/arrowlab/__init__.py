"""Python bindings for the arrowlab C++ core."""

from ._core import *  # noqa: F401,F403
from ._core import InvalidArgument, NumericalFailure  # noqa: F401
