"""Node feature construction for captured snapshots"""

from .encoding import (
    ZERO_EIGENVALUE_TOL,
    FeatureMatrix,
    InfectedLaplacian,
    Snapshot,
    assemble_features,
    encode_snapshot,
    fix_sign,
    infected_laplacian,
    positional_feature,
    state_feature,
    time_feature,
)

__all__ = (
    "FeatureMatrix",
    "InfectedLaplacian",
    "Snapshot",
    "ZERO_EIGENVALUE_TOL",
    "assemble_features",
    "encode_snapshot",
    "fix_sign",
    "infected_laplacian",
    "positional_feature",
    "state_feature",
    "time_feature",
)
