__all__ = [
    "decomposition",
    "family_abc",
    "ideals",
    "lp",
    "polyhedra",
    "quasipoly",
    "symbolic_powers",
]
