"""Decision aiding with pairwise comparisons, commensurable scales and
Choquet-based robust rankings."""

__version__ = "0.1.0"
