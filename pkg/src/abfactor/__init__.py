"""Verification toolkit for the spectral radius condition for [a,b]-factors."""
from .factor import (DeficiencyWitness, FactorResult, FractionalFactor, deficiency,
                     find_factor_flow, find_fractional_factor, has_factor, max_deficiency_bruteforce)
from .graph import (FamilySpec, Graph, complete, construct_cho_graph, construct_family_member,
                    construct_H, empty_graph, from_graph6, join, to_graph6, union)
from .iso import is_isomorphic
from .spectral import (QuotientMatrix, SpectralResult, hsf_bound, kelmans_shift, monotone_f,
                       quotient_matrix, quotient_spectral_radius, spectral_radius)

__version__ = "0.1.0"
