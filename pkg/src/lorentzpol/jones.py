"""Two-by-two SL(2,C) optical operators acting on Jones vectors.

Matrices are plain ``numpy`` complex arrays of shape ``(2, 2)``; Jones
vectors are complex arrays of shape ``(2,)``.  All constructors take the
full angle (theta, phi, eta) and halve it internally.
"""
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

#: per-element unimodularity tolerance
DET_TOL = 1e-10
#: tolerance after composing a chain of elements
COMPOSE_DET_TOL = 1e-8


class NotUnimodularError(ValueError):
    """A matrix expected to lie in SL(2,C) has det != 1."""

    def __init__(self, det, index=None):
        self.det = det
        self.index = index
        where = "" if index is None else f" at index {index}"
        super().__init__(f"matrix{where} is not unimodular: det = {det!r}")


def _finite(name, *values):
    for v in values:
        if not np.all(np.isfinite(v)):
            raise ValueError(f"{name} must be finite, got {v!r}")


def det2(m):
    """Determinant of a 2x2 (or stacked ``(..., 2, 2)``) matrix."""
    m = np.asarray(m)
    return m[..., 0, 0] * m[..., 1, 1] - m[..., 0, 1] * m[..., 1, 0]


def is_unimodular(g, tol=DET_TOL):
    return bool(abs(det2(g) - 1.0) <= tol)


def check_unimodular(g, tol=DET_TOL, index=None):
    """Return ``g`` as a complex array, raising if ``|det g - 1| > tol``."""
    g = np.asarray(g, dtype=complex)
    if g.shape != (2, 2):
        raise ValueError(f"expected a 2x2 matrix, got shape {g.shape}")
    _finite("matrix", g)
    d = det2(g)
    if abs(d - 1.0) > tol:
        raise NotUnimodularError(d, index)
    return g


def rotator(theta):
    """Rotation R(theta) mixing the two beams.

    Parameters
    ----------
    theta : float
        Rotation angle in radians. The matrix uses theta/2.

    Returns
    -------
    numpy.ndarray
        ``[[cos(theta/2), -sin(theta/2)], [sin(theta/2), cos(theta/2)]]``
    """
    _finite("theta", theta)
    c, s = np.cos(theta / 2), np.sin(theta / 2)
    return np.array([[c, -s], [s, c]], dtype=complex)


def phase_shifter(phi):
    """Phase shift P(phi) = diag(exp(-i phi/2), exp(i phi/2))."""
    _finite("phi", phi)
    return np.array([[np.exp(-0.5j * phi), 0], [0, np.exp(0.5j * phi)]])


def squeezer(eta):
    """Squeeze S(eta) = diag(exp(eta/2), exp(-eta/2))."""
    _finite("eta", eta)
    return np.array([[np.exp(eta / 2), 0], [0, np.exp(-eta / 2)]], dtype=complex)


@dataclass(frozen=True)
class AttenuationResult:
    """Unequal attenuation split into a common factor and a squeeze.

    ``overall_factor * relative`` equals ``diag(exp(-eta1), exp(-eta2))``.
    The common factor scales both amplitudes and leaves the degree of
    polarization alone; only ``relative`` is an SL(2,C) element.
    """

    overall_factor: float
    relative: np.ndarray

    def matrix(self):
        return self.overall_factor * self.relative


def attenuator(eta1, eta2):
    """Attenuate the two beams by ``exp(-eta1)`` and ``exp(-eta2)``."""
    _finite("eta", eta1, eta2)
    return AttenuationResult(
        overall_factor=float(np.exp(-(eta1 + eta2) / 2)),
        relative=squeezer(eta2 - eta1),
    )


def compose(elements: Sequence):
    """Product of SL(2,C) elements in application order.

    ``compose([E1, E2, E3])`` applies ``E1`` first and returns
    ``E3 @ E2 @ E1``.

    Raises
    ------
    NotUnimodularError
        If an element has ``|det - 1| > 1e-10``; ``.index`` names it.
    ValueError
        If the list is empty.
    """
    elements = list(elements)
    if not elements:
        raise ValueError("compose needs at least one element")
    out = np.eye(2, dtype=complex)
    for i, e in enumerate(elements):
        out = check_unimodular(e, index=i) @ out
    return out


def apply_jones(g, v):
    """Apply a 2x2 operator to a Jones vector."""
    g = np.asarray(g, dtype=complex)
    v = np.asarray(v, dtype=complex)
    _finite("operator", g)
    _finite("Jones vector", v)
    return g @ v


def jones_vector(psi1, psi2):
    """Jones vector from two complex amplitudes."""
    v = np.array([psi1, psi2], dtype=complex)
    _finite("Jones vector", v)
    return v


def sl2c_inverse(g):
    # inverse of a unimodular 2x2 is its adjugate
    g = np.asarray(g, dtype=complex)
    return np.array([[g[1, 1], -g[0, 1]], [-g[1, 0], g[0, 0]]])


def random_sl2c(rng: np.random.Generator, scale: float = 1.0, size: int = None):
    """Random SL(2,C) element(s): identity plus complex Gaussian noise, rescaled to det 1.

    ``scale`` controls how far the sample strays from the identity.
    """
    shape = (2, 2) if size is None else (size, 2, 2)
    while True:
        z = np.eye(2) + scale * (rng.standard_normal(shape) + 1j * rng.standard_normal(shape))
        d = det2(z)
        # near-singular draws would blow up after the rescale
        if np.all(np.abs(d) > 1e-3):
            return z / np.sqrt(d)[..., None, None]


def generator_chain(rng: np.random.Generator, n: int) -> Iterable[np.ndarray]:
    """``n`` random rotators, phase shifters and squeezers."""
    makers = (rotator, phase_shifter, squeezer)
    for k in rng.integers(0, 3, size=n):
        yield makers[k](rng.uniform(-np.pi, np.pi))
