"""Size caps and truncation defaults shared by all modules."""

import contextlib
import dataclasses


@dataclasses.dataclass
class Config:
    table_cap: int = 512        # largest group built as a Cayley table
    search_cap: int = 60        # largest group for lattice scans and exhaustive hom searches
    hom_budget: int = 2_000_000  # candidate extensions tried by one hom search
    max_degree: int = 6         # chain complex length cap
    sim_dim: int = 4            # default truncation of simplicial towers
    horn_budget: int = 200_000  # partial horns visited by one enumeration
    cochain_cap: int = 24       # largest group whose 2-cochains are solved for
    seed: int = 1


CONFIG = Config()


@contextlib.contextmanager
def configured(**overrides):
    """Temporarily override fields of the global :data:`CONFIG`."""
    old = dataclasses.asdict(CONFIG)
    for k, v in overrides.items():
        if not hasattr(CONFIG, k):
            raise AttributeError(k)
        setattr(CONFIG, k, v)
    try:
        yield CONFIG
    finally:
        for k, v in old.items():
            setattr(CONFIG, k, v)
