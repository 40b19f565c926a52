"""Separability, rating consistency and separability-weighted ELO."""

from ._sepkit import *  # noqa: F401,F403
from ._sepkit import __doc__  # noqa: F401
