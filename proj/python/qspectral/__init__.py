"""Spectral decomposition of normal quaternion matrices.

Quaternion matrices are numpy float64 arrays of shape (n, n, 4) carrying the
components along 1, i, j, k; vectors are (n, 4) arrays. The slice plane is
selected by a unit imaginary axis ``m`` given as a 4-tuple (default: i).
"""

from ._core import (
    Quaternion,
    __version__,
    build_measure,
    classify,
    construct_j,
    evolve,
    inner,
    integrate_representation,
    operator_norm,
    random_normal,
    reconstruct,
    spectral_decompose,
    spherical_spectrum,
    tower_signature,
    verify,
    z_transform,
)

__all__ = [
    "Quaternion",
    "__version__",
    "build_measure",
    "classify",
    "construct_j",
    "evolve",
    "inner",
    "integrate_representation",
    "operator_norm",
    "random_normal",
    "reconstruct",
    "spectral_decompose",
    "spherical_spectrum",
    "tower_signature",
    "verify",
    "z_transform",
]
