"""Semi-abelian homological algebra in the category of finite groups."""

from .config import CONFIG, configured
from .errors import SemiabError
from .groups import FiniteGroup, GroupHom, Subgroup, validate_group
from .zoo import group, hom

__all__ = ["CONFIG", "configured", "SemiabError", "FiniteGroup", "GroupHom", "Subgroup",
           "validate_group", "group", "hom"]
