"""Quantum states in a fixed incoherence basis.

Density matrices, pure states, the real ``(t, z)`` form of a qubit, the
half-weighted direct sum used to embed a qubit into higher dimension, and
the pure-state lift that appends tail amplitudes.
"""
import math
from dataclasses import dataclass

import numpy as np

from . import linalg
from .errors import (
    BadTrace,
    DegenerateLift,
    DimensionError,
    DomainError,
    NormalizationError,
    NotIncoherent,
    NotPositive,
)

TRACE_TOL = 1e-10
PSD_TOL = 1e-9
NORM_TOL = 1e-10
BLOCH_TOL = 1e-12
INCOHERENT_TOL = 1e-10


class DensityMatrix:
    """A validated density matrix: Hermitian, unit trace, positive semidefinite.

    The spectrum is computed once during validation and kept on
    :attr:`spectrum` (descending order).
    """

    __slots__ = ("matrix", "spectrum")

    def __init__(self, matrix):
        m = linalg.as_matrix(matrix)
        # raises NotHermitian before anything else is looked at
        spectrum = linalg.hermitian_eigenvalues(m)
        m = (m + m.conj().T) / 2
        trace = complex(np.trace(m))
        if abs(trace - 1.0) > TRACE_TOL:
            raise BadTrace(f"trace is {trace.real:.12g}, |tr - 1| = {abs(trace - 1.0):.3e}")
        if spectrum[-1] < -PSD_TOL:
            raise NotPositive(f"smallest eigenvalue is {spectrum[-1]:.3e}")
        m.setflags(write=False)
        spectrum.setflags(write=False)
        self.matrix = m
        self.spectrum = spectrum

    @property
    def dim(self):
        return self.matrix.shape[0]

    @property
    def diagonal(self):
        return self.matrix.diagonal().real.copy()

    def purity(self):
        return float(np.sum(np.clip(self.spectrum, 0.0, 1.0) ** 2))

    def is_pure(self, tol=NORM_TOL):
        return self.spectrum[0] >= 1.0 - tol

    def __array__(self, dtype=None, copy=None):
        return self.matrix if dtype is None else self.matrix.astype(dtype)

    def __repr__(self):
        return f"DensityMatrix(dim={self.dim}, matrix={self.matrix.tolist()!r})"


def validate_density(m):
    """Wrap ``m`` as a :class:`DensityMatrix`.

    Raises ``NotHermitian``, ``BadTrace`` or ``NotPositive`` with the
    measured residual in the message.
    """
    return DensityMatrix(m)


@dataclass(frozen=True, eq=False)
class PureState:
    """Unit-norm amplitude vector."""

    amplitudes: np.ndarray

    def __post_init__(self):
        amps = np.array(self.amplitudes, dtype=np.complex128).ravel()
        if amps.size == 0 or not np.all(np.isfinite(amps)):
            raise DomainError("amplitudes must be a non-empty finite vector")
        norm_sq = float(np.sum(np.abs(amps) ** 2))
        if abs(norm_sq - 1.0) > NORM_TOL:
            raise NormalizationError(f"sum |a_i|^2 = {norm_sq:.12g}, expected 1")
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)

    @property
    def dim(self):
        return self.amplitudes.size

    @property
    def probabilities(self):
        return np.abs(self.amplitudes) ** 2

    def density(self):
        return DensityMatrix(np.outer(self.amplitudes, self.amplitudes.conj()))


@dataclass(frozen=True)
class BlochQubit:
    """Qubit ``1/2 [[1+z, t], [t, 1-z]]`` with ``t >= 0`` and ``t^2 + z^2 <= 1``."""

    t: float
    z: float

    def __post_init__(self):
        t, z = float(self.t), float(self.z)
        if not (math.isfinite(t) and math.isfinite(z)):
            raise DomainError("t and z must be finite")
        if t < 0:
            raise DomainError(f"t = {t!r} must be non-negative")
        if t * t + z * z > 1.0 + BLOCH_TOL:
            raise DomainError(f"t^2 + z^2 = {t * t + z * z!r} exceeds 1")
        object.__setattr__(self, "t", t)
        object.__setattr__(self, "z", z)

    @property
    def radius(self):
        return min(1.0, math.hypot(self.t, self.z))

    def density(self):
        return from_bloch_xyz(self.t, 0.0, self.z)


def as_density(state):
    """Accept a DensityMatrix, PureState, BlochQubit or raw matrix."""
    if isinstance(state, DensityMatrix):
        return state
    if isinstance(state, (PureState, BlochQubit)):
        return state.density()
    return DensityMatrix(state)


def from_bloch_xyz(x, y, z):
    r"""Qubit density matrix ``1/2 [[1+z, x-iy], [x+iy, 1-z]]``."""
    x, y, z = float(x), float(y), float(z)
    if x * x + y * y + z * z > 1.0 + BLOCH_TOL:
        raise DomainError(f"Bloch vector ({x}, {y}, {z}) lies outside the unit ball")
    return DensityMatrix(0.5 * np.array([[1 + z, x - 1j * y], [x + 1j * y, 1 - z]]))


def canonicalize_qubit(rho):
    """Reduce a qubit to its ``(t, z)`` form.

    The diagonal unitary ``diag(1, e^{i alpha})`` relating the two forms is
    incoherent, so every coherence measure is unchanged. ``z`` keeps its sign.
    """
    rho = as_density(rho)
    if rho.dim != 2:
        raise DimensionError(f"canonicalize_qubit needs dim 2, got {rho.dim}")
    m = rho.matrix
    t = 2.0 * abs(m[0, 1])
    z = float(m[0, 0].real - m[1, 1].real)
    return BlochQubit(t, z)


def phase_alignment_angle(x, y):
    """Angle ``alpha`` with ``diag(1, e^{i alpha})`` taking ``rho(x, y, z)`` to ``rho(t, z)``."""
    return -math.atan2(y, x)


def dephase(rho):
    """Diagonal part of ``rho`` (the completely dephased state)."""
    rho = as_density(rho)
    return DensityMatrix(np.diag(rho.diagonal))


def is_incoherent(rho, tol=INCOHERENT_TOL):
    rho = as_density(rho)
    m = rho.matrix
    off = np.abs(m - np.diag(np.diag(m)))
    return bool(off.max(initial=0.0) <= tol)


def maximally_coherent(d):
    """Uniform superposition of all ``d`` basis states."""
    if int(d) != d or d < 1:
        raise DomainError(f"dimension must be a positive integer, got {d!r}")
    d = int(d)
    return PureState(np.full(d, 1.0 / math.sqrt(d)))


def incoherent_state(populations):
    """Diagonal density matrix with the given populations."""
    p = np.asarray(populations, dtype=float).ravel()
    return DensityMatrix(np.diag(p))


def embed_mixed(delta, rho):
    """Half-weighted direct sum ``(delta + rho) / 2``: ``delta`` diagonal, ``rho`` a qubit.

    The result has dimension ``delta.dim + 2``.
    """
    delta = as_density(delta)
    rho = as_density(rho)
    if rho.dim != 2:
        raise DimensionError(f"embedded block must be a qubit, got dim {rho.dim}")
    if not is_incoherent(delta):
        raise NotIncoherent("the (d-2)-dimensional block must be diagonal")
    k = delta.dim
    out = np.zeros((k + 2, k + 2), dtype=np.complex128)
    out[:k, :k] = delta.matrix
    out[k:, k:] = rho.matrix
    return DensityMatrix(out / 2)


def lift_pure(phi, alpha, betas):
    """Return ``alpha * phi`` followed by the tail amplitudes ``betas``.

    Requires ``|alpha|^2 + sum |beta_i|^2 = 1`` (tolerance ``1e-10``) and
    ``0 < |alpha| < 1``; one beta gives the single-step lift, several betas
    the multi-tail form (equivalent to repeated single steps).
    """
    if not isinstance(phi, PureState):
        phi = PureState(phi)
    alpha = complex(alpha)
    betas = np.atleast_1d(np.asarray(betas, dtype=np.complex128))
    norm_sq = abs(alpha) ** 2 + float(np.sum(np.abs(betas) ** 2))
    if abs(norm_sq - 1.0) > NORM_TOL:
        raise NormalizationError(f"|alpha|^2 + sum |beta|^2 = {norm_sq:.12g}, expected 1")
    if not (0.0 < abs(alpha) < 1.0):
        raise DegenerateLift(f"|alpha| = {abs(alpha)!r} must lie strictly between 0 and 1")
    amps = np.concatenate([alpha * phi.amplitudes, betas])
    # renormalise away the <= 1e-10 slack admitted above
    return PureState(amps / np.linalg.norm(amps))
