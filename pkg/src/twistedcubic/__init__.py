"""Exact line-orbit census for the twisted cubic in PG(3,q)."""

__version__ = "0.1.0"

from .gfq import Field, make_field  # noqa: F401
from .twisted import build_cubic, classify_line  # noqa: F401
