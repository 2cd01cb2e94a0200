"""Poincare-sphere geometry of a decohering two-beam state.

A :class:`BeamState` with amplitudes ``A``, ``B``, relative phase ``phi``
and coherence decay ``exp(-lambda t)`` has density matrix::

    D(t) = [[A^2,                      A B exp(-lambda t - i phi)],
            [A B exp(-lambda t + i phi), B^2                     ]]

Sphere quantities use the 1/2 normalization: outer radius ``s = (A^2+B^2)/2``
and inner radius ``r = |(rz, rx, ry)|`` so that ``s^2 - r^2 = det D``.
The Stokes vector of the same state is ``SPHERE_TO_STOKES * (s, rz, rx, ry)``.
"""
from dataclasses import dataclass

import numpy as np

from .jones import phase_shifter, rotator, squeezer
from .stokes import SQRT2, lorentz_inverse, mueller_from_sl2c

#: multiply a sphere four-vector (s, rz, rx, ry) by this to get Stokes parameters
SPHERE_TO_STOKES = SQRT2

#: s - r at or below this counts as a pure state
PURE_TOL = 1e-12


class PureStateNotReducible(ValueError):
    """Canonical boost requested for a pure state (r == s, rapidity diverges)."""


@dataclass(frozen=True)
class BeamState:
    amp_a: float
    amp_b: float
    phase: float
    lambda_rate: float
    time: float = 0.0

    def __post_init__(self):
        for name in ("amp_a", "amp_b", "phase", "lambda_rate", "time"):
            v = getattr(self, name)
            if not np.isfinite(v):
                raise ValueError(f"{name} must be finite, got {v!r}")
        for name in ("amp_a", "amp_b", "lambda_rate", "time"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be >= 0, got {getattr(self, name)!r}")

    @property
    def coherence(self):
        """Off-diagonal decay factor ``exp(-lambda t)``."""
        return float(np.exp(-self.lambda_rate * self.time))

    def at(self, time):
        return BeamState(self.amp_a, self.amp_b, self.phase, self.lambda_rate, time)


def density_matrix(state: BeamState):
    a, b = state.amp_a, state.amp_b
    off = a * b * state.coherence * np.exp(-1j * state.phase)
    return np.array([[a * a, off], [np.conj(off), b * b]], dtype=complex)


def determinant(state: BeamState):
    """``(AB)^2 (1 - exp(-2 lambda t))`` evaluated without cancellation."""
    ab = state.amp_a * state.amp_b
    return float(-(ab ** 2) * np.expm1(-2 * state.lambda_rate * state.time))


@dataclass(frozen=True)
class SphereGeometry:
    outer_s: float
    inner_r: float
    polar: float
    azimuth: float
    rz: float
    rx: float
    ry: float

    def four_vector(self):
        """``(s, rz, rx, ry)`` in the sphere normalization."""
        return np.array([self.outer_s, self.rz, self.rx, self.ry])

    @property
    def invariant(self):
        """``s^2 - r^2``."""
        return (self.outer_s - self.inner_r) * (self.outer_s + self.inner_r)


def geometry_from_components(s, rz, rx, ry):
    r = float(np.sqrt(rz * rz + rx * rx + ry * ry))
    polar = float(np.arccos(np.clip(rz / r, -1.0, 1.0))) if r > 0 else 0.0
    azimuth = float(np.arctan2(ry, rx))
    return SphereGeometry(float(s), r, polar, azimuth, float(rz), float(rx), float(ry))


def sphere_geometry(state: BeamState):
    a, b = state.amp_a, state.amp_b
    cross = a * b * state.coherence
    return geometry_from_components(
        (a * a + b * b) / 2,
        (a * a - b * b) / 2,
        cross * np.cos(state.phase),
        cross * np.sin(state.phase),
    )


def align_element(geom: SphereGeometry):
    """SL(2,C) rotation ``R(-polar) P(-azimuth)`` carrying the inner-sphere
    direction onto the S1 axis."""
    if geom.inner_r == 0:
        return np.eye(2, dtype=complex)
    return rotator(-geom.polar) @ phase_shifter(-geom.azimuth)


def align_rotation(geom: SphereGeometry):
    """Rotation (S0 fixed) mapping ``(s, rz, rx, ry)`` to ``(s, r, 0, 0)``.

    Built from the phase-shifter and rotator subgroup.  Returns the identity
    when ``r == 0``.
    """
    if geom.inner_r == 0:
        return np.eye(4)
    return mueller_from_sl2c(align_element(geom))


@dataclass(frozen=True)
class CanonicalForm:
    value: float
    boost_eta: float
    align_rotation: np.ndarray


def canonical_boost(geom: SphereGeometry):
    """Rapidity that reduces the aligned vector ``(s, r, 0, 0)`` to
    ``(sqrt(s^2 - r^2), 0, 0, 0)``: ``tanh(eta) = r/s``.

    Raises
    ------
    PureStateNotReducible
        If ``s - r <= 1e-12``.
    """
    s, r = geom.outer_s, geom.inner_r
    if s - r <= PURE_TOL:
        raise PureStateNotReducible(
            f"pure state not reducible: s - r = {s - r:.3e} (s={s!r}, r={r!r})"
        )
    return CanonicalForm(
        value=float(np.sqrt(geom.invariant)),
        boost_eta=float(np.arctanh(r / s)),
        align_rotation=align_rotation(geom),
    )


def canonical_element(geom: SphereGeometry, eta):
    """SL(2,C) element for boost-after-alignment, ``S(-eta) R(-polar) P(-azimuth)``."""
    return squeezer(-eta) @ align_element(geom)


def canonicalize(state: BeamState):
    """Reduce the state's sphere four-vector to time-component-only form.

    Returns
    -------
    form : CanonicalForm
    transform : numpy.ndarray
        4x4 Lorentz matrix (inverse boost after alignment) with
        ``transform @ (s, rz, rx, ry) == (form.value, 0, 0, 0)``.  Being
        linear it applies equally to the Stokes vector, scaled by sqrt(2).
    """
    geom = sphere_geometry(state)
    form = canonical_boost(geom)
    return form, mueller_from_sl2c(canonical_element(geom, form.boost_eta))


def uncanonicalize(value, transform):
    """Map a canonical value back to the sphere four-vector."""
    return lorentz_inverse(transform) @ np.array([value, 0.0, 0.0, 0.0])
