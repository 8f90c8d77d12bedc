"""Coherence measures: l1-norm, relative entropy, coherence of formation.

All functions return plain floats (bits for the entropic measures).
"""
import enum
import math

import numpy as np

from . import linalg
from .errors import DomainError, NormalizationError, UnsupportedInput
from .states import BlochQubit, PureState, as_density, canonicalize_qubit

NORM_TOL = 1e-10
NEG_SLACK = 1e-12


class Measure(enum.Enum):
    L1 = "l1"
    REL_ENT = "relent"
    FORMATION = "formation"

    @classmethod
    def parse(cls, name):
        if isinstance(name, cls):
            return name
        key = str(name).strip().lower()
        aliases = {"l1": cls.L1, "relent": cls.REL_ENT, "rel_ent": cls.REL_ENT,
                   "r": cls.REL_ENT, "formation": cls.FORMATION, "f": cls.FORMATION}
        try:
            return aliases[key]
        except KeyError:
            raise ValueError(f"unknown measure {name!r}; use l1, relent or formation") from None

    @property
    def label(self):
        return {"l1": "C_l1", "relent": "C_r", "formation": "C_f"}[self.value]


def _nonneg(value):
    # rounding noise only; larger negatives are left visible
    if -NEG_SLACK <= value < 0.0:
        return 0.0
    return value


def c_l1(rho):
    """Sum of absolute values of the off-diagonal entries."""
    m = as_density(rho).matrix
    return float(np.abs(m[~np.eye(m.shape[0], dtype=bool)]).sum())


def c_r(rho):
    """Relative entropy of coherence, ``S(diag(rho)) - S(rho)``."""
    rho = as_density(rho)
    value = linalg.shannon_entropy(rho.diagonal) - linalg.spectral_entropy(rho.spectrum)
    return _nonneg(value)


def c_f_pure(phi):
    """Coherence of formation of a pure state: entropy of ``|a_i|^2``."""
    if not isinstance(phi, PureState):
        phi = PureState(phi)
    return linalg.shannon_entropy(phi.probabilities)


def c_f_qubit(q):
    """Qubit coherence of formation ``H(1/2 + sqrt(1 - t^2)/2)``."""
    if not isinstance(q, BlochQubit):
        q = canonicalize_qubit(q)
    if q.t > 1.0 + 1e-12:
        raise DomainError(f"t = {q.t} exceeds 1")
    return linalg.binary_entropy(0.5 + math.sqrt(max(0.0, 1.0 - q.t * q.t)) / 2)


def c_f(rho):
    """Coherence of formation where a closed form exists.

    Qubits use the ``t``-only closed form; pure states of any dimension use
    the pure-state formula. Mixed states with ``d >= 3`` need a convex-roof
    optimisation that is not provided and raise :class:`UnsupportedInput`.
    """
    if isinstance(rho, PureState):
        return c_f_pure(rho)
    if isinstance(rho, BlochQubit):
        return c_f_qubit(rho)
    rho = as_density(rho)
    if rho.dim == 2:
        return c_f_qubit(canonicalize_qubit(rho))
    if rho.is_pure():
        # pure: entropy of the diagonal, which is C_r with S(rho) = 0
        return c_r(rho)
    raise UnsupportedInput(
        f"coherence of formation of a mixed state with d = {rho.dim} >= 3 is not implemented"
    )


def c_l1_qubit(q):
    return q.t


def c_r_qubit(q):
    """Closed form ``H(1/2 - |z|/2) - H(1/2 - sqrt(z^2 + t^2)/2)``."""
    return _nonneg(
        linalg.binary_entropy(0.5 - abs(q.z) / 2) - linalg.binary_entropy(0.5 - q.radius / 2)
    )


def c_r_qubit_array(t, z):
    """Vectorised :func:`c_r_qubit` over broadcastable ``t`` and ``z`` arrays."""
    t = np.asarray(t, dtype=float)
    z = np.abs(np.asarray(z, dtype=float))
    r = np.minimum(np.hypot(t, z), 1.0)
    return linalg.binary_entropy_array(0.5 - z / 2) - linalg.binary_entropy_array(0.5 - r / 2)


def coherence(state, measure):
    """Evaluate ``measure`` (a :class:`Measure` or its name) on ``state``."""
    measure = Measure.parse(measure)
    if measure is Measure.FORMATION:
        return c_f(state)
    if isinstance(state, BlochQubit):
        return c_l1_qubit(state) if measure is Measure.L1 else c_r_qubit(state)
    return c_l1(state) if measure is Measure.L1 else c_r(state)


def c_l1_lift_recursion(c_prev, alpha, beta):
    """l1 coherence after lifting ``phi -> alpha phi + beta |d>``, from ``C_l1(phi)`` alone.

    Uses ``sum_i |a_i| = sqrt(1 + C_l1(phi))`` for a normalised ``phi``.
    """
    a, b = abs(complex(alpha)), abs(complex(beta))
    if abs(a * a + b * b - 1.0) > NORM_TOL:
        raise NormalizationError(f"|alpha|^2 + |beta|^2 = {a * a + b * b!r}, expected 1")
    if c_prev < -NEG_SLACK:
        raise DomainError(f"previous coherence {c_prev!r} is negative")
    c_prev = max(c_prev, 0.0)
    return a * a * c_prev + 2.0 * a * b * math.sqrt(1.0 + c_prev)


def c_r_lift_recursion(c_prev, alpha_sq):
    """Relative-entropy coherence after a lift with weight ``|alpha|^2``."""
    if not (0.0 < alpha_sq < 1.0):
        raise DomainError(f"|alpha|^2 = {alpha_sq!r} must lie strictly between 0 and 1")
    if c_prev < -NEG_SLACK:
        raise DomainError(f"previous coherence {c_prev!r} is negative")
    return alpha_sq * max(c_prev, 0.0) + linalg.binary_entropy(alpha_sq)
