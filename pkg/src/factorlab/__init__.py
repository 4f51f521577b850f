"""Factorization invariants of finitely generated monoids in N^d."""
from __future__ import annotations

from .errors import AssertionFailed, FactorlabError, InvalidInput, ResourceCapExceeded
from .fibers import catenary_of, elasticity_of, fiber, length_set, mu_of, r_classes
from .invariants import (Context, catenary_degree, delta_bounds, elasticity, invariant_report, nu,
                         tame_degree, tame_wrt)
from .monoid import AffineMonoid, kernel_lattice, new_affine, new_numerical
from .oracle import cross_check
from .relations import betti_elements, graver_basis, prime_split, relation_atoms
from .transfer import AtomPartition, TransferSpec, check_condition_one, check_induced_onto, verify_transfer

__version__ = "0.1.0"
