"""Sections of configuration spaces of points on the sphere: braid algebra, constructions, monodromy."""

from .braid import BraidWord, Permutation, permutation_of
from .configuration import Configuration, SectionOutput, verify_output
from .feasibility import Status, Verdict, construct, decide, gg_residues
from .garside import equal_in_artin, normal_form
from .mobius import MobiusMap, ProjectivePoint

__all__ = [
    "BraidWord", "Permutation", "permutation_of", "Configuration", "SectionOutput",
    "verify_output", "Status", "Verdict", "construct", "decide", "gg_residues",
    "equal_in_artin", "normal_form", "MobiusMap", "ProjectivePoint",
]
