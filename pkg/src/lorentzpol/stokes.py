"""Coherency matrices, Stokes four-vectors and the induced Mueller (Lorentz) matrices.

Stokes components use the 1/sqrt(2) normalization::

    S0 = (S11 + S22)/sqrt(2)     S1 = (S11 - S22)/sqrt(2)
    S2 = (S12 + S21)/sqrt(2)     S3 = i (S12 - S21)/sqrt(2)

so that ``C = (S0*I + S1*sz + S2*sx + S3*sy)/sqrt(2)``, i.e. the coherency
matrix has the Minkowski form ``[[t+z, x-iy], [x+iy, t-z]]/sqrt(2)`` with
``(t, z, x, y) = (S0, S1, S2, S3)``.  With this normalization the Minkowski
square of the Stokes vector is ``2 det C`` rather than ``det C``.

The coherency matrix of a pure state ``v`` is ``v v^dagger``; an SL(2,C)
element ``G`` acts on it by ``C -> G C G^dagger``.
"""
from dataclasses import dataclass

import numpy as np

from .jones import _finite, check_unimodular, compose, det2, rotator, squeezer

SQRT2 = np.sqrt(2.0)
#: Minkowski metric on (S0, S1, S2, S3)
MINKOWSKI = np.diag([1.0, -1.0, -1.0, -1.0])

HERMITIAN_TOL = 1e-12
# residual imaginary parts above this mean the input was not Hermitian
_IMAG_TOL = 1e-10

# Pauli matrices ordered as the Stokes components: I, sz, sx, sy
_PAULI = np.array(
    [
        [[1, 0], [0, 1]],
        [[1, 0], [0, -1]],
        [[0, 1], [1, 0]],
        [[0, -1j], [1j, 0]],
    ],
    dtype=complex,
)


def hermitian_defect(c):
    c = np.asarray(c)
    return float(np.max(np.abs(c - np.conj(np.swapaxes(c, -1, -2)))))


def is_hermitian(c, tol=HERMITIAN_TOL):
    # relative to the entry scale so large intensities are not penalized
    c = np.asarray(c)
    return hermitian_defect(c) <= tol * max(1.0, float(np.max(np.abs(c))))


def coherency_from_jones(v):
    """Coherency matrix ``v v^dagger`` of a pure Jones state.

    ``S11 = |psi1|^2``, ``S22 = |psi2|^2``, ``S12 = psi1 conj(psi2)``.
    """
    v = np.asarray(v, dtype=complex)
    _finite("Jones vector", v)
    return np.outer(v, np.conj(v))


def conjugate(g, c):
    """Transform a coherency matrix: ``G C G^dagger``.

    Raises
    ------
    NotUnimodularError
        If ``det g`` differs from 1 by more than 1e-10.
    """
    g = check_unimodular(g)
    c = np.asarray(c, dtype=complex)
    if not is_hermitian(c):
        raise ValueError("coherency matrix must be Hermitian")
    out = g @ c @ g.conj().T
    # restore exact Hermiticity lost to rounding
    return 0.5 * (out + out.conj().T)


def stokes_from_coherency(c):
    """Stokes four-vector(s) of Hermitian coherency matrix/matrices.

    Accepts shape ``(2, 2)`` or ``(..., 2, 2)``; returns real ``(..., 4)``.
    """
    c = np.asarray(c, dtype=complex)
    if not is_hermitian(c):
        raise ValueError("coherency matrix must be Hermitian")
    s11, s12 = c[..., 0, 0], c[..., 0, 1]
    s21, s22 = c[..., 1, 0], c[..., 1, 1]
    s = np.stack(
        [s11 + s22, s11 - s22, s12 + s21, 1j * (s12 - s21)], axis=-1
    ) / SQRT2
    if np.max(np.abs(s.imag), initial=0.0) > _IMAG_TOL * max(1.0, float(np.max(np.abs(c)))):
        raise ValueError("Stokes components have a non-negligible imaginary part")
    return s.real


def coherency_from_stokes(s):
    """Inverse of :func:`stokes_from_coherency`.

    No positivity check is made; unphysical vectors map to indefinite
    Hermitian matrices (see :func:`is_physical`).
    """
    s = np.asarray(s, dtype=float)
    _finite("Stokes vector", s)
    return np.tensordot(s, _PAULI, axes=([-1], [0])) / SQRT2


def minkowski_norm(s):
    """``S0^2 - S1^2 - S2^2 - S3^2`` (works along the last axis)."""
    s = np.asarray(s, dtype=float)
    return s[..., 0] ** 2 - s[..., 1] ** 2 - s[..., 2] ** 2 - s[..., 3] ** 2


def is_physical(s, tol=1e-10):
    """True for a forward, non-spacelike Stokes vector (``S0 >= 0``, norm >= 0)."""
    s = np.asarray(s, dtype=float)
    return bool(s[0] >= 0 and minkowski_norm(s) >= -tol)


def coherency_det(c):
    """Real determinant of a Hermitian 2x2 matrix."""
    return float(np.real(det2(np.asarray(c))))


_BASIS = coherency_from_stokes(np.eye(4))  # (4, 2, 2), one per unit Stokes component


def mueller_from_sl2c(g):
    """Real 4x4 Lorentz matrix induced by ``G`` on Stokes vectors.

    Column ``j`` is the Stokes vector of ``G B_j G^dagger`` where ``B_j`` is
    the coherency matrix of the unit vector along component ``j``.  Hence
    ``stokes(G C G^dagger) == M @ stokes(C)`` for every Hermitian ``C``.
    ``G`` and ``-G`` give the same matrix.
    """
    g = check_unimodular(g)
    pushed = g @ _BASIS @ g.conj().T
    return stokes_from_coherency(pushed).T


def lorentz_inverse(m):
    """Inverse of a Lorentz matrix, ``g M^T g``."""
    m = np.asarray(m, dtype=float)
    return MINKOWSKI @ m.T @ MINKOWSKI


def lorentz_defect(m):
    """max-abs entry of ``M^T g M - g``."""
    m = np.asarray(m, dtype=float)
    return float(np.max(np.abs(m.T @ MINKOWSKI @ m - MINKOWSKI)))


@dataclass(frozen=True)
class PolarFactors:
    """``g = rotation_part @ boost_part`` with the Wigner angle of the rotation."""

    rotation_part: np.ndarray
    boost_part: np.ndarray
    wigner_angle: float

    def product(self):
        return self.rotation_part @ self.boost_part


def _wrap_angle(a):
    # into (-pi, pi]
    a = np.mod(a + np.pi, 2 * np.pi) - np.pi
    return np.pi if a == -np.pi else float(a)


def rotation_angle(u, tol=1e-14):
    """Signed rotation angle of an SU(2) element, reduced to (-pi, pi].

    Writing ``u = [[p, -conj(q)], [q, conj(p)]]``, the half angle has cosine
    ``Re p`` and sine ``sqrt(Im(p)^2 + |q|^2)``.  The sign follows the
    rotator component ``Re q`` (falling back to ``-Im p``, then ``Im q``), so
    ``rotator(theta)`` and ``phase_shifter(phi)`` give ``+theta`` and ``+phi``.
    ``u`` and ``-u`` give the same angle.
    """
    p, q = u[0, 0], u[1, 0]
    axis = (q.real, -p.imag, q.imag)
    sine = np.sqrt(p.imag ** 2 + abs(q) ** 2)
    sign = 1.0
    for a in axis:
        if abs(a) > tol:
            sign = np.sign(a)
            break
    return _wrap_angle(2 * np.arctan2(sign * sine, p.real))


def polar_decompose(g):
    """Polar factorization ``g = U H`` of an SL(2,C) element.

    ``H = sqrt(g^dagger g)`` is Hermitian positive-definite with det 1 and
    ``U`` is in SU(2).  For a positive 2x2 matrix ``P`` with det 1 the square
    root is ``(P + I)/sqrt(tr P + 2)``, and ``H^-1`` is the adjugate of ``H``.

    Returns
    -------
    PolarFactors
    """
    g = check_unimodular(g)
    p = g.conj().T @ g
    p = 0.5 * (p + p.conj().T)
    tr = p[0, 0].real + p[1, 1].real
    if not np.isfinite(tr) or tr + 2.0 <= 0.0:
        raise ValueError("g^dagger g is not positive; cannot take its square root")
    h = (p + np.eye(2)) / np.sqrt(tr + 2.0)
    h_inv = np.array([[h[1, 1], -h[0, 1]], [-h[1, 0], h[0, 0]]])
    u = g @ h_inv
    return PolarFactors(rotation_part=u, boost_part=h, wigner_angle=rotation_angle(u))


def three_squeezes(eta, axis_angle, reverse=False):
    """Three squeezes of rapidity ``eta`` along axes ``axis_angle`` apart.

    Returns ``B2 B1 B0`` with ``Bk = R(k a) S(eta) R(-k a)``, or ``B0 B1 B2``
    when ``reverse`` is set.  For non-collinear axes the product is not
    Hermitian; its unitary polar factor is the Wigner rotation.
    """
    boosts = [rotator(k * axis_angle) @ squeezer(eta) @ rotator(-k * axis_angle)
              for k in range(3)]
    if reverse:
        boosts.reverse()
    return compose(boosts)
