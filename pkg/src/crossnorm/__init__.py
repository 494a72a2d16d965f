"""Fundamental crossed complexes of simplicial sets, their normalisation,
and homology through chain complexes over the fundamental groupoid."""
from .chains import homology, nabla, smith_normal_form
from .complex import FreeCrossedComplex
from .groupoid import Graph, Word
from .homotopy import Homotopy, build_homotopy, cylinder_morphism, derived_morphism
from .morphism import Morphism, build_morphism, extend_basis_map, kill_basis
from .normalization import full_normalize, normalized_complex, verify_normalization, zero_normalize
from .pi import fundamental_crossed_complex, hal_boundary
from .simplicial import SimplicialSet, boundary_simplex, nerve_of_group, standard_simplex, validate
from .tensor import algebraic_simplex, cone, cylinder, hal_consistency_check

__all__ = [
    "FreeCrossedComplex",
    "Graph",
    "Homotopy",
    "Morphism",
    "SimplicialSet",
    "Word",
    "algebraic_simplex",
    "boundary_simplex",
    "build_homotopy",
    "build_morphism",
    "cone",
    "cylinder",
    "cylinder_morphism",
    "derived_morphism",
    "extend_basis_map",
    "full_normalize",
    "fundamental_crossed_complex",
    "hal_boundary",
    "hal_consistency_check",
    "homology",
    "kill_basis",
    "nabla",
    "nerve_of_group",
    "normalized_complex",
    "smith_normal_form",
    "standard_simplex",
    "validate",
    "verify_normalization",
    "zero_normalize",
]
