"""Weyl operators, Lagrangian subgroups and their commutant algebras on finite phase spaces."""

from .groups import FiniteAbelianGroup, InputError, Subgroup, enumerate_subgroups, parse_group_spec
from .kernels import BACKEND
from .phase_space import Convention, Multiplier, PhaseSpace, enumerate_lagrangians, sigma_complement
from .weyl import ExactUnitary, ProjectiveRep, schrodinger_rep, weyl_matrix

__version__ = "0.1.0"

__all__ = [
    "BACKEND", "Convention", "ExactUnitary", "FiniteAbelianGroup", "InputError", "Multiplier",
    "PhaseSpace", "ProjectiveRep", "Subgroup", "enumerate_lagrangians", "enumerate_subgroups",
    "parse_group_spec", "schrodinger_rep", "sigma_complement", "weyl_matrix",
]
