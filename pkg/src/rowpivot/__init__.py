"""Persistence barcodes over GF(2) by column and row pivot reduction."""

from .builders import DistanceMatrix, build_rips, parse_explicit_filtration, parse_lower_distance_matrix, parse_point_cloud
from .complex import Filtration, InvalidFiltrationError, Simplex, boundary_faces, dimension_blocks, full_simplex, validate_filtration
from .matrix import SparsePivotMatrix, SubmatrixSpec, anti_transpose, build_boundary_matrix, rank_gf2
from .pairing import (
    Barcode,
    PersistencePair,
    acyclic_reduction_count,
    assemble_barcode,
    oracle_pairs,
    pairing_oracle,
    pairs_from_column_reduced,
    pairs_from_row_reduced,
)
from .reduction import (
    ALL_STRATEGIES,
    Optimization,
    Orientation,
    ReductionCertificate,
    ReductionStats,
    Strategy,
    reduce_columns,
    reduce_columns_clear,
    reduce_rows,
    reduce_rows_compress,
    run_strategy,
    verify_certificate,
)

__version__ = "0.1.0"
