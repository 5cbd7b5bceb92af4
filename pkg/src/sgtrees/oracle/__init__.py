"""Independent checks: brute-force enumeration, determinants and sampling."""

from .exhaustive import DegreeProfile, exhaustive_profiles
from .mtt import mtt_count, mtt_degree_profile, mtt_forest_counts, mtt_profiles
from .wilson import SampleStats, wilson_sample

__all__ = [
    "DegreeProfile",
    "SampleStats",
    "exhaustive_profiles",
    "mtt_count",
    "mtt_degree_profile",
    "mtt_forest_counts",
    "mtt_profiles",
    "wilson_sample",
]
