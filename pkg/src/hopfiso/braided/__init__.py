"""Free braided algebra, Serre rewriting, skew projections and PBW checks."""

from .poly import (BraidedPoly, bracketings, braided_commutator, relabel_sigma, reverse_root_vector,
                   root_vector, serre_relations)
from .rewriting import RewriteSystem, build_rewrite_system, normal_form
from .skew import SkewAlgebra, SkewPoly, skew_project
from .verify import mainsystem1_check, verify_degree1, verify_mainreverse
