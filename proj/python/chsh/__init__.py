"""CHSH bounds for two-qubit states: closed forms, Horodecki value and a numerical oracle."""

from ._core import *  # noqa: F401,F403
from ._core import __doc__  # noqa: F401
