"""Graded homological algebra over quotient rings."""
from .complex import (ChainComplex, ChainMap, ExtTable, FreeResolution, HomModule, SplitResult,
                      degree_window_iso, exact_at, ext, find_retraction, free_resolution, hom_module,
                      induced_on_homology, padded_resolution, split_injection_test, tor, ext_disc, tor_disc)
from .module import (FPModule, ModuleMap, SubQuotient, contained, direct_sum, multiple_submodule, pushout,
                     quotient_by_elem, same_submodule, subquotient, torsion_submodule)

__all__ = [
    "FPModule", "ModuleMap", "SubQuotient", "ChainComplex", "ChainMap", "FreeResolution", "ExtTable",
    "HomModule", "SplitResult", "subquotient", "same_submodule", "contained", "direct_sum", "pushout",
    "torsion_submodule", "quotient_by_elem", "multiple_submodule", "free_resolution", "ext", "tor",
    "hom_module", "split_injection_test", "find_retraction", "induced_on_homology", "exact_at",
    "degree_window_iso", "padded_resolution", "ext_disc", "tor_disc",
]
