"""Exact integral cohomology of cyclic wreath constructions.

Brute force (Smith normal form on the equivariant Hom double complex) and
closed forms, with tools to compare the two.
"""
from .exactlin import IntegerMatrix, PreconditionError, smith_normal_form
from .graded import Family, GradedAbelianGroup, MalformedGroupError
from .complexes import CochainComplex, build_cyclic_complex, cohomology, tensor
from .equivariant import cyclic_power, hom_double_complex, total_cohomology
from .formulas import predict_wreath_cohomology

__version__ = "0.1.0"
