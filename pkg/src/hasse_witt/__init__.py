"""Exact Hasse-Witt invariants, Galois twists and Clifford boundary classes over Q."""

from hasse_witt.arith import INF, factorize, hilbert_oracle, hilbert_symbol, squarefree_part
from hasse_witt.galois_coh import BrauerClass, SquareClass, br_add, cup, sq_mul
from hasse_witt.quadform import DiagonalForm, QuadraticForm, is_equivalent, w1, w2

__all__ = [
    "INF",
    "BrauerClass",
    "DiagonalForm",
    "QuadraticForm",
    "SquareClass",
    "br_add",
    "cup",
    "factorize",
    "hilbert_oracle",
    "hilbert_symbol",
    "is_equivalent",
    "sq_mul",
    "squarefree_part",
    "w1",
    "w2",
]
