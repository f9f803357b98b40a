"""Compression of chain complexes of free bigraded modules over GF(2).

``multi_chunk`` shrinks a complex to the smallest quasi-isomorphic one;
``mpfree`` computes minimal presentations of its homology.
"""
from .core import (
    ChainComplex,
    Grade,
    GradedMatrix,
    Label,
    LabelTable,
    ValidationError,
    add_column,
    colex_normalize,
    is_local,
    pivot,
)
from .multichunk import ChunkStats, multi_chunk
from .mpfree import (
    MpfreeCounters,
    ker_basis,
    ker_basis_lw,
    min_gens,
    min_gens_lw,
    minimize,
    minimize_lw,
    mpfree,
    pipeline,
    presentation_complex,
    reparam,
)
from .scc import SccFormatError, parse_scc, read_scc, to_scc_string, write_scc

__version__ = "0.1.0"
