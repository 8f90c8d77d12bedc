"""Ordering-different pairs: classification, qubit feasibility, scans and constructions.

Two measures order a pair of states differently when one ranks the first
state strictly below the second and the other strictly above. For qubits
in ``(t, z)`` form the l1 coherence is ``t`` alone, so with ``t1 < t2`` the
search reduces to finding ``z1, z2`` with ``C_r(t1, z1) > C_r(t2, z2)``.
Relative-entropy coherence grows with both ``t`` and ``|z|``, which pins
the best candidate to ``z1 = sqrt(1 - t1^2)``, ``z2 = 0``.
"""
import csv
import enum
import io
import math
from dataclasses import dataclass

import numpy as np

from . import linalg
from .errors import DimensionMismatch, DomainError, StateFileError
from .measures import Measure, c_r, c_r_qubit_array, coherence
from .states import (
    BlochQubit,
    DensityMatrix,
    PureState,
    as_density,
    embed_mixed,
    from_bloch_xyz,
    lift_pure,
)

DEFAULT_TOL = 1e-9
BOUNDARY_TOL = 1e-12

# qubit pair reported with (t1, t2) = (4/5, 2/sqrt(6))
RHO1 = np.array([[4 / 5, 2 / 5], [2 / 5, 1 / 5]])
RHO2 = np.array([[1 / 2, 1 / math.sqrt(6)], [1 / math.sqrt(6), 1 / 2]])
# qutrit pure pair
PHI1 = np.sqrt([12 / 25, 12 / 25, 1 / 25])
PHI2 = np.sqrt([7 / 10, 1 / 5, 1 / 10])


def reference_qubit_pair():
    return DensityMatrix(RHO1), DensityMatrix(RHO2)


def reference_qutrit_pair():
    return PureState(PHI1), PureState(PHI2)


class Verdict(enum.Enum):
    SAME_ORDER = "SameOrder"
    ORDERING_DIFFERENT = "OrderingDifferent"
    TIE_AT_TOLERANCE = "TieAtTolerance"


@dataclass(frozen=True)
class OrderingVerdict:
    measure_a: Measure
    measure_b: Measure
    value_a1: float
    value_a2: float
    value_b1: float
    value_b2: float
    verdict: Verdict
    tolerance: float

    def describe(self):
        def rel(x, y):
            if abs(x - y) <= self.tolerance:
                return "~"
            return "<" if x < y else ">"

        a, b = self.measure_a.label, self.measure_b.label
        return "\n".join([
            f"{a}: {self.value_a1:.6f} {rel(self.value_a1, self.value_a2)} {self.value_a2:.6f}",
            f"{b}: {self.value_b1:.6f} {rel(self.value_b1, self.value_b2)} {self.value_b2:.6f}",
            f"verdict: {self.verdict.value}",
        ])


def _dim(state):
    if isinstance(state, BlochQubit):
        return 2
    return state.dim


def classify_pair(rho1, rho2, a=Measure.L1, b=Measure.REL_ENT, tol=DEFAULT_TOL):
    """Compare how measures ``a`` and ``b`` order the pair ``(rho1, rho2)``.

    A gap of magnitude ``<= tol`` in either measure is a tie; otherwise the
    pair is ordering-different when the two gaps have opposite signs.
    States may be density matrices, pure states, qubits in ``(t, z)`` form
    or raw matrices.
    """
    a, b = Measure.parse(a), Measure.parse(b)
    if not isinstance(rho1, (DensityMatrix, PureState, BlochQubit)):
        rho1 = as_density(rho1)
    if not isinstance(rho2, (DensityMatrix, PureState, BlochQubit)):
        rho2 = as_density(rho2)
    if _dim(rho1) != _dim(rho2):
        raise DimensionMismatch(f"states have dimensions {_dim(rho1)} and {_dim(rho2)}")
    a1, a2 = coherence(rho1, a), coherence(rho2, a)
    b1, b2 = coherence(rho1, b), coherence(rho2, b)
    da, db = a1 - a2, b1 - b2
    if abs(da) <= tol or abs(db) <= tol:
        verdict = Verdict.TIE_AT_TOLERANCE
    elif (da > 0) != (db > 0):
        verdict = Verdict.ORDERING_DIFFERENT
    else:
        verdict = Verdict.SAME_ORDER
    return OrderingVerdict(a, b, a1, a2, b1, b2, verdict, tol)


@dataclass(frozen=True)
class FeasibilityResult:
    t1: float
    t2: float
    lhs: float
    rhs: float
    feasible: bool
    boundary: bool = False


def _check_t(name, t):
    if not (math.isfinite(t) and 0.0 <= t <= 1.0):
        raise DomainError(f"{name} = {t!r} must lie in [0, 1]")


def qubit_pair_feasible(t1, t2):
    """Decide whether ``z1, z2`` exist with ``C_r(t1, z1) > C_r(t2, z2)``.

    ``lhs`` is the largest reachable ``C_r(t1, .)`` (pure state) and ``rhs``
    the smallest ``C_r(t2, .)`` (``z2 = 0``). Differences within ``1e-12``
    are flagged ``boundary`` and reported infeasible.
    """
    t1, t2 = float(t1), float(t2)
    _check_t("t1", t1)
    _check_t("t2", t2)
    if t1 > t2:
        raise DomainError(f"expected t1 <= t2, got t1 = {t1!r}, t2 = {t2!r}")
    lhs = linalg.binary_entropy((1.0 - math.sqrt(max(0.0, 1.0 - t1 * t1))) / 2)
    rhs = 1.0 - linalg.binary_entropy((1.0 - t2) / 2)
    boundary = abs(lhs - rhs) <= BOUNDARY_TOL
    return FeasibilityResult(t1, t2, lhs, rhs, (lhs > rhs) and not boundary, boundary)


def find_witness(t1, t2):
    """Extremal ``(z1, z2) = (sqrt(1 - t1^2), 0)`` when feasible, else ``None``."""
    t1, t2 = float(t1), float(t2)
    _check_t("t1", t1)
    _check_t("t2", t2)
    if not t1 < t2:
        raise DomainError(f"expected t1 < t2, got t1 = {t1!r}, t2 = {t2!r}")
    if not qubit_pair_feasible(t1, t2).feasible:
        return None
    return math.sqrt(max(0.0, 1.0 - t1 * t1)), 0.0


def witness_pair(t1, t2):
    """The qubit pair at the extremal witness, or ``None`` if infeasible."""
    w = find_witness(t1, t2)
    if w is None:
        return None
    z1, z2 = w
    return from_bloch_xyz(t1, 0.0, z1), from_bloch_xyz(t2, 0.0, z2)


@dataclass(frozen=True, eq=False)
class ScanGrid:
    """``delta_cr[i, j] = C_r(t1, z1[i]) - C_r(t2, z2[j])``."""

    t1: float
    t2: float
    z1_axis: np.ndarray
    z2_axis: np.ndarray
    delta_cr: np.ndarray

    def positive_region(self, tol=0.0):
        return self.delta_cr > tol

    def value_at(self, z1, z2):
        """Cell nearest to ``(z1, z2)``."""
        i = int(np.argmin(np.abs(self.z1_axis - z1)))
        j = int(np.argmin(np.abs(self.z2_axis - z2)))
        return float(self.delta_cr[i, j])

    def crosscheck(self, stride=16):
        """Largest deviation between sampled cells and matrix-based ``C_r``."""
        worst = 0.0
        for i in range(0, self.z1_axis.size, stride):
            c1 = c_r(from_bloch_xyz(self.t1, 0.0, self.z1_axis[i]))
            for j in range(0, self.z2_axis.size, stride):
                c2 = c_r(from_bloch_xyz(self.t2, 0.0, self.z2_axis[j]))
                worst = max(worst, abs((c1 - c2) - self.delta_cr[i, j]))
        return worst

    def to_csv(self):
        """Header ``t1=..;t2=..`` corner then z2 values; rows start with z1.

        Axes are written with ``repr`` (exact round trip), cells with 12
        significant digits.
        """
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow([f"t1={self.t1!r};t2={self.t2!r}"] + [repr(float(z)) for z in self.z2_axis])
        for z1, row in zip(self.z1_axis, self.delta_cr):
            w.writerow([repr(float(z1))] + [f"{v:.12g}" for v in row])
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text):
        try:
            rows = list(csv.reader(io.StringIO(text)))
            corner = dict(part.split("=", 1) for part in rows[0][0].split(";"))
            t1, t2 = float(corner["t1"]), float(corner["t2"])
            z2 = np.array([float(v) for v in rows[0][1:]])
            body = [r for r in rows[1:] if r]
            z1 = np.array([float(r[0]) for r in body])
            delta = np.array([[float(v) for v in r[1:]] for r in body])
        except (IndexError, KeyError, ValueError) as exc:
            raise StateFileError(f"malformed scan CSV: {exc}") from exc
        if delta.shape != (z1.size, z2.size):
            raise StateFileError(f"scan CSV cells have shape {delta.shape}, axes {z1.size}x{z2.size}")
        return cls(t1, t2, z1, z2, delta)


def scan_delta_cr(t1, t2, n1, n2):
    """Evaluate ``C_r(t1, z1) - C_r(t2, z2)`` on uniform ``z`` grids.

    ``z1`` spans ``[0, sqrt(1 - t1^2)]`` with ``n1`` points, likewise ``z2``.
    Closed qubit forms are used; :meth:`ScanGrid.crosscheck` compares a
    subsample against the matrix definition.
    """
    t1, t2 = float(t1), float(t2)
    _check_t("t1", t1)
    _check_t("t2", t2)
    if int(n1) != n1 or int(n2) != n2 or n1 < 2 or n2 < 2:
        raise DomainError(f"grid sizes must be integers >= 2, got {n1!r}, {n2!r}")
    z1 = np.linspace(0.0, math.sqrt(max(0.0, 1.0 - t1 * t1)), int(n1))
    z2 = np.linspace(0.0, math.sqrt(max(0.0, 1.0 - t2 * t2)), int(n2))
    c1 = c_r_qubit_array(t1, z1)
    c2 = c_r_qubit_array(t2, z2)
    return ScanGrid(t1, t2, z1, z2, c1[:, None] - c2[None, :])


def build_lifted_pair(d, alpha, betas=None):
    """Lift the qutrit pure pair to dimension ``d`` with shared tail amplitudes.

    ``betas`` defaults to equal real tails ``sqrt((1 - |alpha|^2) / (d - 3))``.
    """
    if int(d) != d or d < 4:
        raise DomainError(f"lifted pairs need integer d >= 4, got {d!r}")
    d = int(d)
    if betas is None:
        rest = max(0.0, 1.0 - abs(complex(alpha)) ** 2)
        betas = np.full(d - 3, math.sqrt(rest / (d - 3)))
    betas = np.atleast_1d(np.asarray(betas, dtype=np.complex128))
    if betas.size != d - 3:
        raise DimensionMismatch(f"d = {d} needs {d - 3} tail amplitudes, got {betas.size}")
    phi1, phi2 = reference_qutrit_pair()
    return lift_pure(phi1, alpha, betas), lift_pure(phi2, alpha, betas)


def build_embedded_pair(d, delta1=None, delta2=None):
    """Embed the qubit pair as ``(delta_i + rho_i) / 2`` in dimension ``d``.

    The diagonal blocks default to the maximally mixed ``(d-2)``-state.
    """
    if int(d) != d or d < 3:
        raise DomainError(f"embedded pairs need integer d >= 3, got {d!r}")
    d = int(d)
    uniform = np.eye(d - 2) / (d - 2)
    delta1 = as_density(uniform if delta1 is None else delta1)
    delta2 = as_density(uniform if delta2 is None else delta2)
    for delta in (delta1, delta2):
        if delta.dim != d - 2:
            raise DimensionMismatch(f"diagonal block has dim {delta.dim}, expected {d - 2}")
    rho1, rho2 = reference_qubit_pair()
    return embed_mixed(delta1, rho1), embed_mixed(delta2, rho2)
