"""Resampling strategies for imbalanced classification and regression tables.

Every strategy returns ``(data, removed, added_seeds, warnings)``.
"""

from ._core import *  # noqa: F401,F403
from ._core import DataError, Dataset

__all__ = [name for name in dir() if not name.startswith("_")]
