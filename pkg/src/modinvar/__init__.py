"""Workbench for modular invariants of glued matrix groups over finite fields."""

from modinvar.gfq import FieldSpec, Scalar, build_field, enumerate_field

__all__ = ["FieldSpec", "Scalar", "build_field", "enumerate_field"]

__version__ = "0.1.0"
