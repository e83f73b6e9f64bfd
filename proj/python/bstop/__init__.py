"""Bernoulli optimal stopping: myopic rules, total-positivity certificates,
Poisson-binomial tables, and independent verification oracles."""

from ._core import *  # noqa: F401,F403
from ._core import __doc__  # noqa: F401

__version__ = "0.1.0"
