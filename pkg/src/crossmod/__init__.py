"""Crossed modules, identities among relations and group extensions, computed exactly."""

from .cohomology import CohomologyClass, CohomologyGroup, cohomology_class, cohomology_group
from .extensions import (
    AbstractKernel,
    Extension,
    NotExtendible,
    abstract_kernels,
    baer_act,
    congruent,
    construct_extension,
    enumerate_extensions,
    is_extendible,
    obstruction,
)
from .freexmod import (
    FreeCrossedModule,
    PresentationKInvariant,
    fc_equal,
    identity_class,
    identity_module,
    peiffer_element,
    verify_identity,
)
from .grouprings import QModule, fox_boundaries, zq_matrix_to_int
from .groups import FiniteGroup, GroupError, SizeBoundExceeded, cyclic_group, subgroup
from .linalg import AbelianGroupStructure, IntMatrix, smith_normal_form
from .presentations import (
    S3_PRESENTATION,
    Presentation,
    cayley_graph,
    enumerate_presentation,
    parse_presentation,
    todd_coxeter,
)
from .topology import cover_complex, cover_homology, export_dot
from .words import Alphabet, Word, parse_word
from .xmod import (
    FiniteCrossedModule,
    characteristic_class,
    power_map_crossed_module,
    restrict_extension,
    two_fold_extension,
)

__version__ = "0.1.0"

__all__ = [
    "AbelianGroupStructure",
    "AbstractKernel",
    "Alphabet",
    "CohomologyClass",
    "CohomologyGroup",
    "Extension",
    "FiniteCrossedModule",
    "FiniteGroup",
    "FreeCrossedModule",
    "GroupError",
    "IntMatrix",
    "NotExtendible",
    "Presentation",
    "PresentationKInvariant",
    "QModule",
    "S3_PRESENTATION",
    "SizeBoundExceeded",
    "Word",
    "abstract_kernels",
    "baer_act",
    "cayley_graph",
    "characteristic_class",
    "cohomology_class",
    "cohomology_group",
    "congruent",
    "construct_extension",
    "cover_complex",
    "cover_homology",
    "cyclic_group",
    "enumerate_extensions",
    "enumerate_presentation",
    "export_dot",
    "fc_equal",
    "fox_boundaries",
    "identity_class",
    "identity_module",
    "is_extendible",
    "obstruction",
    "parse_presentation",
    "parse_word",
    "peiffer_element",
    "power_map_crossed_module",
    "restrict_extension",
    "smith_normal_form",
    "subgroup",
    "todd_coxeter",
    "two_fold_extension",
    "verify_identity",
    "zq_matrix_to_int",
]
