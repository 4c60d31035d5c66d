"""Perps, duals and PF tests for finite rings and their finitely generated modules."""

from .duality import (check_galois_laws, check_sum_intersect_laws, closure, dual_module, is_dense,
                      perp_of_dual_submodule, perp_of_submodule, phi_kernel, phi_map)
from .errors import (GuardExceeded, ModuleMismatch, PerpCalcError, PreconditionError,
                     SpecSemanticError, SpecSyntaxError)
from .modules import (Module, Submodule, enumerate_submodules, free_module, module_from_relations,
                      parse_module_spec, quotient_module, submodule_generated)
from .pf import (find_witness, has_perp_equivalence, is_kasch, is_pf, is_self_injective,
                 verify_lemma_f8, verify_main_theorem)
from .rings import FiniteRing, build_ring, ring_axiom_audit
from .ringspec import parse_ring_spec

__version__ = "1.0.0"

__all__ = [
    "FiniteRing", "GuardExceeded", "Module", "ModuleMismatch", "PerpCalcError", "PreconditionError",
    "SpecSemanticError", "SpecSyntaxError", "Submodule", "build_ring", "check_galois_laws",
    "check_sum_intersect_laws", "closure", "dual_module", "enumerate_submodules", "find_witness",
    "free_module", "has_perp_equivalence", "is_dense", "is_kasch", "is_pf", "is_self_injective",
    "module_from_relations", "parse_module_spec", "parse_ring_spec", "perp_of_dual_submodule",
    "perp_of_submodule", "phi_kernel", "phi_map", "quotient_module", "ring_axiom_audit",
    "submodule_generated", "verify_lemma_f8", "verify_main_theorem",
]
