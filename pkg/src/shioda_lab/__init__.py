"""Shioda maps between one-parameter Calabi-Yau pencils and the finite
abelian groups whose quotients they realize, in exact integer arithmetic."""

from .family import CYPencil, PencilError, builtin_family, builtin_pencil, cyclic_family, cyclic_pencil, validate
from .linalg import IntMatrix, Lattice, det, snf
from .report import analyze

__all__ = [
    "CYPencil",
    "IntMatrix",
    "Lattice",
    "PencilError",
    "analyze",
    "builtin_family",
    "builtin_pencil",
    "cyclic_family",
    "cyclic_pencil",
    "det",
    "snf",
    "validate",
]
