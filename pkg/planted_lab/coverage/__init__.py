from planted_lab.coverage.coverage_group import (
    CoverageGroup, CoverageReport, build_coverage, verify_coverage, seed_family, reduced_hyperedges,
)
from planted_lab.coverage.reduction import induced_spec, reduce_to_prem

__all__ = [
    "CoverageGroup", "CoverageReport", "build_coverage", "verify_coverage", "seed_family", "reduced_hyperedges",
    "induced_spec", "reduce_to_prem",
]
