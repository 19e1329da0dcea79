"""Memristor race-logic seed-extension simulator, FPNI tap model and cost models."""

from .alignment import (DPResult, ScoringScheme, SeedContext, Sequence, dp_fill, extract_outputs,
                        init_matrix, levenshtein_oracle)
from .errors import FastaError, InvalidArgument, OracleScaleExceeded, UnfilledMatrixError
from .lattice import ArrivalMap, Lattice, build_lattice, simulate, tap_output

__version__ = "0.1.0"

__all__ = [
    "ArrivalMap", "DPResult", "FastaError", "InvalidArgument", "Lattice", "OracleScaleExceeded",
    "ScoringScheme", "SeedContext", "Sequence", "UnfilledMatrixError", "build_lattice", "dp_fill",
    "extract_outputs", "init_matrix", "levenshtein_oracle", "simulate", "tap_output",
]
