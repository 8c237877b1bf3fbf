"""Pseudo-Hadamard matrices of the first generation in {0,1} presentation."""

from .generator import (
    ColumnClass,
    ColumnClassPartition,
    GenerateReport,
    SizeError,
    emit_row,
    enumerate_allocations,
    generate,
    iter_matrices,
    refine,
    row_targets,
)
from .matrix import (
    BinMatrix,
    GramTarget,
    expected_gram,
    gram_of_cols,
    gram_of_rows,
    is_hadamard,
    is_pseudo_hadamard,
    is_row_gram_pseudo,
    transpose,
)
from .matrix_io import MatrixStreamHeader, read_stream, write_stream
from .oracle import brute_force_row_gram, canonicalize
from .transform import (
    Permutation,
    conjecture_5_1_fix,
    conjecture_5_2_fix,
    extract_first_generation,
    lift_to_hadamard,
    normalize_hadamard,
    permute_cols,
    permute_rows,
)

__version__ = "0.1.0"

__all__ = [
    "BinMatrix",
    "ColumnClass",
    "ColumnClassPartition",
    "GenerateReport",
    "GramTarget",
    "MatrixStreamHeader",
    "Permutation",
    "SizeError",
    "brute_force_row_gram",
    "canonicalize",
    "conjecture_5_1_fix",
    "conjecture_5_2_fix",
    "emit_row",
    "enumerate_allocations",
    "expected_gram",
    "extract_first_generation",
    "generate",
    "gram_of_cols",
    "gram_of_rows",
    "is_hadamard",
    "is_pseudo_hadamard",
    "is_row_gram_pseudo",
    "iter_matrices",
    "lift_to_hadamard",
    "normalize_hadamard",
    "permute_cols",
    "permute_rows",
    "read_stream",
    "refine",
    "row_targets",
    "transpose",
    "write_stream",
]
