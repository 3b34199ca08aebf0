"""Numerical checks of the Carlitz-specialized congruence, ultrametric and pigeonhole statements."""
from .bound import check_carlitz_bound
from .lemmas import (CongruenceParams, check_acceleration, check_congruence, check_lemclef1,
                     check_lemclef2)
from .pigeonhole import (UnitGroup, bounded_representatives, pigeonhole_check, pigeonhole_find,
                         pigeonhole_refined, representatives, subgroups_of_unit_group,
                         subgroups_oracle)
from .report import Report

__all__ = [
    "CongruenceParams", "Report", "UnitGroup", "bounded_representatives", "check_acceleration",
    "check_carlitz_bound", "check_congruence", "check_lemclef1", "check_lemclef2",
    "pigeonhole_check", "pigeonhole_find", "pigeonhole_refined", "representatives",
    "subgroups_of_unit_group", "subgroups_oracle",
]
