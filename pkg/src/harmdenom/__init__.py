"""Multiplicative structure of the denominators of harmonic numbers.

H_n = c_n / d_n in lowest terms, D_n = lcm(1..n) and q_n = D_n / d_n.
"""

from ._backend import BACKEND
from .errors import (
    HarmError,
    InvalidArgumentError,
    InvariantError,
    PrecisionExhaustedError,
    ResourceLimitError,
    SearchExhaustedError,
)

__version__ = "0.1.0"
