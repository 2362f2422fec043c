"""Group-based least squares regression for strongly correlated predictors."""

from ._collinear import *  # noqa: F401,F403
from ._collinear import Error, fixtures

__all__ = [name for name in dir() if not name.startswith("_")]
