"""Koszul DG algebras, DG modules over them, and derived functors."""
from .algebra import (KoszulDGAlgebra, RegularityResult, is_regular_sequence, koszul_complex,
                      koszul_homology, merge_sign)
from .dgmodule import (DGModule, dg_module_from_complex, discrete_as_dg_module, koszul_dg_module,
                       koszul_module_over)
from .semifree import SemifreeResolution, dg_ext, dg_tor, semifree_resolution
