"""Poset associahedra: tubings of posets and their construction by truncation."""

from .builder import build, verify_against_oracle
from .errors import AssocError, BudgetExceeded, InputError, VerificationError
from .lattice import FaceLattice, diamond_check, euler_check, lattice_iso
from .polytope import SimplePolytope, face_lattice, point, product, simplex, truncate_face, validate
from .poset import Poset, parse_poset
from .tubing import dimension, f_vector, face_poset, is_tube, is_tubing, tubes, tubings

__all__ = [
    "AssocError", "BudgetExceeded", "FaceLattice", "InputError", "Poset", "SimplePolytope",
    "VerificationError", "build", "diamond_check", "dimension", "euler_check", "f_vector",
    "face_lattice", "face_poset", "is_tube", "is_tubing", "lattice_iso", "parse_poset", "point",
    "product", "simplex", "truncate_face", "tubes", "tubings", "validate", "verify_against_oracle",
]
