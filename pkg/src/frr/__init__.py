"""Fractional Fourier transforms, fractional Riesz and Hilbert operators, and monogenic edge features."""

from .errors import FormatError, FrrError, GridMismatchError, InvalidArgumentError, InvalidOrderError
from .fields import ComplexField, FrftOrder, Grid, chirp, make_grid, rel_l2
from .fracops import (
    apply_multiplier,
    chirp_derivative,
    chirped_laplacian,
    fractional_hilbert,
    fractional_riesz,
    frft_output_derivative,
    hilbert_symbol,
    mixed_second_derivative,
    remove_dc,
    riesz_conjugated,
    riesz_multiplier,
    riesz_spatial_oracle,
    riesz_symbol,
)
from .frft import centered_dft, frft, frft_inverse, frft_quadrature, output_grid, plan
from .monogenic import (
    EdgeFeatures,
    MonogenicField,
    binarize,
    block_image,
    detect_edges,
    directional_sweep,
    local_features,
    monogenic_signal,
)

__all__ = [
    "FormatError",
    "FrrError",
    "GridMismatchError",
    "InvalidArgumentError",
    "InvalidOrderError",
    "ComplexField",
    "FrftOrder",
    "Grid",
    "chirp",
    "make_grid",
    "rel_l2",
    "apply_multiplier",
    "chirp_derivative",
    "chirped_laplacian",
    "fractional_hilbert",
    "fractional_riesz",
    "frft_output_derivative",
    "hilbert_symbol",
    "mixed_second_derivative",
    "remove_dc",
    "riesz_conjugated",
    "riesz_multiplier",
    "riesz_spatial_oracle",
    "riesz_symbol",
    "centered_dft",
    "frft",
    "frft_inverse",
    "frft_quadrature",
    "output_grid",
    "plan",
    "EdgeFeatures",
    "MonogenicField",
    "binarize",
    "block_image",
    "detect_edges",
    "directional_sweep",
    "local_features",
    "monogenic_signal",
]

__version__ = "0.1.0"
