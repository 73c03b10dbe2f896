"""Positivity of one-holed torus open book monodromies, with certificates."""

from .braid import BraidWord, equals, exp_sum, is_conjugate, matrix_rep, normal_form, parse_word
from .factorization import decide, verify_certificate
from .murasugi import classify, gate

__all__ = [
    "BraidWord",
    "classify",
    "decide",
    "equals",
    "exp_sum",
    "gate",
    "is_conjugate",
    "matrix_rep",
    "normal_form",
    "parse_word",
    "verify_certificate",
]
