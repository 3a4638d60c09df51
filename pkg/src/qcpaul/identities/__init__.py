"""Catalog of circuit identities, each checked by evaluating both sides.

Importing this package registers every group in a fixed order, which is the
order used by ``verify --all``.
"""

from __future__ import annotations

from . import pauli, cnot, exchanger, general, bell, measurement, fourier  # noqa: F401
from .registry import (DEFAULT_SEED, CatalogError, Identity, Param, VerificationReport, get,
                       instantiate, list_identities, param_points, point_deviation, verify,
                       verify_all)

__all__ = [
    "DEFAULT_SEED", "CatalogError", "Identity", "Param", "VerificationReport", "get",
    "instantiate", "list_identities", "param_points", "point_deviation", "verify", "verify_all",
]
