"""Флаговые позитроиды, ожерелья Грассмана и положительное тропическое флаговое многообразие (flagpos)."""

from . import config  # noqa: F401
from .ground import GroundError, Permutation, Subset  # noqa: F401
from .matroid import FlagMatroid, Matroid, MatroidError  # noqa: F401
from .necklace import GrassmannNecklace, NecklaceError, quotient_test  # noqa: F401
from .schema import SchemaError  # noqa: F401
from .tropical import FlagTropVector, TropicalError, TropPluckerVector, in_fldr_nonneg, pom_check  # noqa: F401

__all__ = [
    "GroundError",
    "Permutation",
    "Subset",
    "FlagMatroid",
    "Matroid",
    "MatroidError",
    "GrassmannNecklace",
    "NecklaceError",
    "quotient_test",
    "SchemaError",
    "FlagTropVector",
    "TropicalError",
    "TropPluckerVector",
    "in_fldr_nonneg",
    "pom_check",
    "config",
]
