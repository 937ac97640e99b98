"""Renyi, Shannon and Tsallis entropies of D-dimensional hydrogenic states."""

from ._hydent import *  # noqa: F401,F403
from ._hydent import QuantumState, renyi_entropy, renyi_asymptotic  # noqa: F401
