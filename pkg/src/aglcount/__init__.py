"""Exact counting of affine-equivalence classes of q-ary functions and of
Reed-Muller quotient codes, by Burnside sums over explicit conjugacy-class
data of the affine linear group, cross-validated by brute-force oracles."""

from .compound import asymptotic_report, compound_matrix
from .conjugacy import ClassIndex, PartitionTuple, compute_D, enumerate_classes, enumerate_omega
from .formulas import centralizer_order, count_function_classes, element_order, orbit_exponent
from .linalg import AffineMap, GFMatrix
from .numtheory import PrimePower, agl_group_order
from .partitions import enumerate_partitions, partition_compare
from .reps import build_representative, irreducibles_of_order, verify_class
from .rm import AnfPoly, RMQuotientBasis, anf_substitute, coset_class_count_M, theta

__version__ = "0.1.0"

__all__ = [
    "AffineMap",
    "AnfPoly",
    "ClassIndex",
    "GFMatrix",
    "PartitionTuple",
    "PrimePower",
    "RMQuotientBasis",
    "agl_group_order",
    "anf_substitute",
    "asymptotic_report",
    "build_representative",
    "centralizer_order",
    "compound_matrix",
    "compute_D",
    "coset_class_count_M",
    "count_function_classes",
    "element_order",
    "enumerate_classes",
    "enumerate_omega",
    "enumerate_partitions",
    "irreducibles_of_order",
    "orbit_exponent",
    "partition_compare",
    "theta",
    "verify_class",
]
