"""Pre-orthogonal adaptive Fourier decomposition in the Hardy space.

Functions take and return plain lists of complex Taylor coefficients
(c_0..c_N for disc functions, c_{-N}..c_N for boundary functions).
"""

from ._core import (
    DEFAULT_DEGREE,
    DEFAULT_R_MAX,
    Config,
    Expansion,
    Inversion,
    PoafdError,
    PseudoInverse,
    apply_L,
    basis_expand,
    basis_invert,
    basis_pseudo_inverse,
    evaluate,
    expand,
    hk_inner,
    invert,
    pseudo_invert,
    run_cli,
    szego,
    transfer_condition,
    verify,
)

__all__ = [
    "DEFAULT_DEGREE",
    "DEFAULT_R_MAX",
    "Config",
    "Expansion",
    "Inversion",
    "PoafdError",
    "PseudoInverse",
    "apply_L",
    "basis_expand",
    "basis_invert",
    "basis_pseudo_inverse",
    "evaluate",
    "expand",
    "hk_inner",
    "invert",
    "pseudo_invert",
    "run_cli",
    "szego",
    "transfer_condition",
    "verify",
]
