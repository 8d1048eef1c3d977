"""Lifting modules along elements: single steps, chains, limits and the regularity check."""
from .chain import (LCIInconsistency, LCIVerdict, LiftCertificate, LimitResult, MultiCertificate, check_lci,
                    lift_multi, lift_to_order, reconstruct_limit)
from .engine import (Alpha0, LiftingError, LiftingReport, LiftStepResult, Obstruction, OmegaCover, alpha0,
                     check_lifting, exhaustive_lift_search, ext2_window, lift_step, omega_cover, verify_lifting)
