"""Heights on Drinfeld modules over F_q(T): exact Weil heights, certified canonical
heights, torsion decisions, and numerical checks of the Carlitz-specialized lemmas."""
from .drinfeld import DrinfeldModule, TorsionPoint, carlitz, cyclotomic_field, torsion_points_in
from .heights import (Budget, BudgetExceeded, HeightInterval, canonical_height, gamma_bound,
                      is_torsion, min_height_search, weil_height, weil_height_by_places)
from .ore import OrePoly

__version__ = "0.1.0"

__all__ = [
    "Budget", "BudgetExceeded", "DrinfeldModule", "HeightInterval", "OrePoly", "TorsionPoint",
    "canonical_height", "carlitz", "cyclotomic_field", "gamma_bound", "is_torsion",
    "min_height_search", "torsion_points_in", "weil_height", "weil_height_by_places",
]
