"""
Size limits shared by the combinatorial checks.
"""

from dataclasses import dataclass
from typing import Optional


@dataclass(frozen=True)
class Limits:
    """
    Caps on instance sizes.

    Every check in the library enumerates subsets, orderings or lattice
    elements, so the cost grows exponentially with these numbers.
    """

    max_labels: int = 5
    max_double_labels: int = 3
    lattice_cap: int = 512
    regularity_labels: int = 3
    ideal_map_labels: int = 4
    max_listed_minors: int = 64
    max_koszul_generators: int = 4


DEFAULT_LIMITS = Limits()


def resolve(limits: Optional[Limits]) -> Limits:
    """Return ``limits`` or the defaults."""
    return DEFAULT_LIMITS if limits is None else limits
