"""Exact generation length of finite matrix sets.

Computes the rank sequence r_i = dim L_i of the span of products of length
<= i, the length c = min{i : r_i = r_*}, checks the modified PBW property,
and produces machine-checkable rewrite certificates.
"""
__version__ = "0.1.0"

from .exact_linalg import EchelonBasis, FieldSpec, SquareMatrix, char_poly, mat_mul
from .span_engine import Filtration, GeneratorSet, Truncated, build_filtration, length, reduce_word
from .pbw import check_pbw
from .rewrite import rewrite_word, verify_certificate
from .bounds import analyze, paz_general
from .witnesses import quantum_plane, random_set, sl2_irrep

__all__ = [
    "EchelonBasis", "FieldSpec", "SquareMatrix", "char_poly", "mat_mul",
    "Filtration", "GeneratorSet", "Truncated", "build_filtration", "length", "reduce_word",
    "check_pbw", "rewrite_word", "verify_certificate", "analyze", "paz_general",
    "quantum_plane", "random_set", "sl2_irrep",
]
