"""Uniform linear array: per-element phase profiles and steering vectors."""

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class ArrayGeometry:
    """A uniform linear array.

    Parameters
    ----------
    num_elements : int
        Number of antenna elements (>= 1).
    spacing_ratio : float
        Adjacent-element spacing as a fraction of the carrier wavelength
        (0.5 means half-wavelength spacing, the default).
    """

    num_elements: int
    spacing_ratio: float = 0.5

    def __post_init__(self) -> None:
        if self.num_elements < 1:
            raise ValueError(f"num_elements must be >= 1, got {self.num_elements}")
        if self.spacing_ratio <= 0:
            raise ValueError(f"spacing_ratio must be > 0, got {self.spacing_ratio}")


def phase_profile(geometry: ArrayGeometry, theta: float) -> np.ndarray:
    """Per-element phase profile, in cycles, toward direction ``theta`` (radians).

    Element n (n = 1..N in formulas, stored 0-based) gets
    ``-(n - (N + 1)/2) * spacing_ratio * cos(theta)`` cycles, so the profile
    is antisymmetric about the array centre and the centre element of an
    odd-length array is always 0.
    """
    n = np.arange(1, geometry.num_elements + 1, dtype=float)
    centre = (geometry.num_elements + 1) / 2.0
    return -(n - centre) * geometry.spacing_ratio * np.cos(theta)


def steering_vector(geometry: ArrayGeometry, theta: float) -> np.ndarray:
    """Unit-modulus steering vector ``exp(j*2*pi*profile)`` at angle ``theta``.

    No 1/sqrt(N) normalization is applied here; beamformer vectors carry the
    power normalization instead.
    """
    return np.exp(2j * np.pi * phase_profile(geometry, theta))
