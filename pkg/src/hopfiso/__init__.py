"""Exact computations for pointed Hopf algebras u(D, mu) of Cartan type A_n."""

from .datum import (CartanDatum, braiding_datum, build_datum, cyclic_square_datum, infinite_classes_datum,
                    random_braiding_datum, random_datum, standard_datum, twist)
from .errors import (BudgetExceededError, ConductorMismatchError, DatumError, HopfisoError, InputError,
                     InternalConsistencyError, StructuralError, UnsupportedCaseError)
from .groups import Character, FiniteAbelianGroup, GroupAlgebraElement, GroupElement, GroupHomomorphism
from .iso import (IsoWitness, ScalingPattern, automorphism_group, hopf_isomorphisms, iso_classes,
                  solve_scaling)
from .params import (ParamFamily, check_conditions, coproduct_check, normalize, scale, sigma_action,
                     t_coefficient, u_elements)
from .scalars import CycloContext, Scalar, cyclo_context, format_scalar, parse_scalar

__version__ = "0.1.0"
