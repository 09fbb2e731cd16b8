"""Genus of random origamis, with the symmetric and C4 wreath character theory behind it."""
from .origami import Origami, are_equivalent, genus, make_origami, vertex_count_commutator, vertex_orbits
from .perm import Permutation, commutator, cycle_type

__version__ = "0.1.0"
