"""Distance covariance and distance correlation toolkit.

Thin Python layer over the C++ core: dependence statistics for samples of
arbitrary dimension, a seeded permutation test of independence, generators for
the benchmark joint distributions and synthetic backcross data, and per-marker
genome scans.
"""

from ._dcov import (
    DcovResult,
    ScanRecord,
    ScanResult,
    TestResult,
    __version__,
    default_noise,
    distance_correlation,
    distance_covariance_sq,
    double_center,
    pairwise_distance_matrix,
    pearson,
    permutation_distribution,
    permutation_test,
    scan_markers,
    simulate_backcross,
    simulate_shape,
    spearman,
)

__all__ = [
    "DcovResult",
    "ScanRecord",
    "ScanResult",
    "TestResult",
    "__version__",
    "default_noise",
    "distance_correlation",
    "distance_covariance_sq",
    "double_center",
    "pairwise_distance_matrix",
    "pearson",
    "permutation_distribution",
    "permutation_test",
    "scan_markers",
    "simulate_backcross",
    "simulate_shape",
    "spearman",
]
