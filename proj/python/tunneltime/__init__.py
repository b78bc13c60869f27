"""Tunneling-time model for strong-field ionization.

Thin re-export of the C++ extension. Everything is in atomic units except
where a name ends in ``_as`` (attoseconds).
"""

from ._core import *  # noqa: F401,F403
from ._core import __doc__  # noqa: F401
