"""Finite gyrogroups as Cayley tables: verification, doubling, subgyrogroup
structure, isomorphism and exhaustive small-order search."""

from .axioms import VerificationReport, check_gyration_table, is_gyrocommutative, verify
from .core import (FiniteGyrogroup, Permutation, Subset, Verdict, derive_gyr, gyro_inverse_table,
                   left_inverse, op)
from .doubling import DoubledGyrogroup, double, double_iterated
from .errors import GyroError, InputError, InternalError, ResourceError, StructureError
from .tablefile import parse, render

__all__ = [
    "FiniteGyrogroup", "Permutation", "Subset", "Verdict", "VerificationReport",
    "DoubledGyrogroup", "GyroError", "InputError", "InternalError", "ResourceError",
    "StructureError", "check_gyration_table", "derive_gyr", "double", "double_iterated",
    "gyro_inverse_table", "is_gyrocommutative", "left_inverse", "op", "parse", "render", "verify",
]
