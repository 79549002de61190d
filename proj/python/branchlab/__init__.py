"""Exact branching multiplicities, branching cones, and their asymptotics."""

from branchlab._core import (
    BranchlabError,
    branch,
    cone,
    dims,
    mult,
    root_system,
    stretch,
    volume,
)

__all__ = [
    "BranchlabError",
    "branch",
    "cone",
    "dims",
    "mult",
    "root_system",
    "stretch",
    "volume",
]
