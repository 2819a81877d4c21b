"""Base sequences, Goethals-Seidel Hadamard matrices of order 4d and their equivalence classes."""

from .codec import QuadCode, hex_decode, hex_encode, load_table, quad_decode, quad_encode
from .designs import (
    BaseSeqQuad,
    TSeqQuad,
    bs_fold,
    enumerate_bs,
    gbs_orbits,
    near_normal_set,
    normal_set,
    quad_permute,
    ts_to_bs,
    validate_bs,
    validate_ts,
)
from .equiv import ClassStore, canonical_cert, canonical_form, dedup, search_equivalent
from .gs import HadamardMatrix, gs_assemble, is_hadamard, transpose
from .seqcore import BinarySeq, TernarySeq, autocorr, seq
from .yang import yang1, yang2, yang3, yang4

__all__ = [
    "BaseSeqQuad",
    "BinarySeq",
    "ClassStore",
    "HadamardMatrix",
    "QuadCode",
    "TSeqQuad",
    "TernarySeq",
    "autocorr",
    "bs_fold",
    "canonical_cert",
    "canonical_form",
    "dedup",
    "enumerate_bs",
    "gbs_orbits",
    "gs_assemble",
    "hex_decode",
    "hex_encode",
    "is_hadamard",
    "load_table",
    "near_normal_set",
    "normal_set",
    "quad_decode",
    "quad_encode",
    "quad_permute",
    "search_equivalent",
    "seq",
    "transpose",
    "ts_to_bs",
    "validate_bs",
    "validate_ts",
    "yang1",
    "yang2",
    "yang3",
    "yang4",
]
