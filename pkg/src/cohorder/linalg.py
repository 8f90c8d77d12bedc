"""Dense Hermitian eigenvalues and base-2 entropies.

Everything here works on plain ``numpy`` arrays; any object exposing
``__array__`` (such as :class:`cohorder.states.DensityMatrix`) is accepted.
"""
import math

import numpy as np

from .errors import DomainError, NoConvergence, NotHermitian

HERMITIAN_TOL = 1e-10
OFFDIAG_TOL = 1e-12
SWEEP_LIMIT = 100
STALL_TOL = 1e-8
PROB_TOL = 1e-12
NORM_TOL = 1e-9


def as_matrix(m):
    """Return ``m`` as a square complex128 array, rejecting NaN/Inf."""
    a = np.array(m, dtype=np.complex128)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] == 0:
        raise DomainError(f"expected a non-empty square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise DomainError("matrix has non-finite entries")
    return a


def hermiticity_residual(m):
    a = np.asarray(m)
    return float(np.max(np.abs(a - a.conj().T)))


def _off_norm(rows):
    total = 0.0
    for i, row in enumerate(rows):
        for j, x in enumerate(row):
            if i != j:
                total += x.real * x.real + x.imag * x.imag
    return math.sqrt(total)


def hermitian_eigenvalues(m, tol=OFFDIAG_TOL, max_sweeps=SWEEP_LIMIT):
    """Eigenvalues of a Hermitian matrix by cyclic complex Jacobi rotations.

    Parameters
    ----------
    m : array_like
        Square matrix, Hermitian to within ``1e-10`` entrywise.
    tol : float
        Sweeps stop once the off-diagonal Frobenius norm drops below
        ``tol * max(1, ||m||_F)``.
    max_sweeps : int
        Sweep budget.

    Returns
    -------
    numpy.ndarray
        Real eigenvalues sorted in descending order.

    Raises
    ------
    NotHermitian
        If ``max |m - m^H| > 1e-10``.
    NoConvergence
        If the budget runs out with the off-diagonal norm still ``>= 1e-8``.
    """
    a = as_matrix(m)
    residual = hermiticity_residual(a)
    if residual > HERMITIAN_TOL:
        raise NotHermitian(f"matrix is not Hermitian: max |m - m^H| = {residual:.3e}")
    a = (a + a.conj().T) / 2
    n = a.shape[0]
    scale = max(1.0, float(np.linalg.norm(a)))
    # plain lists: per-rotation numpy overhead dominates for the small d used here
    rows = a.tolist()

    off = _off_norm(rows)
    for _ in range(max_sweeps):
        if off < tol * scale:
            break
        for p in range(n - 1):
            row_p = rows[p]
            for q in range(p + 1, n):
                row_q = rows[q]
                apq = row_p[q]
                mag = abs(apq)
                if mag < 1e-300:
                    continue
                phase = apq / mag
                theta = (row_q[q].real - row_p[p].real) / (2.0 * mag)
                if theta == 0.0:
                    t = 1.0
                else:
                    t = math.copysign(1.0, theta) / (abs(theta) + math.hypot(theta, 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                # a <- J^H a J with J = [[c, s e^{i phi}], [-s e^{-i phi}, c]] on (p, q)
                sp = s * phase
                spc = sp.conjugate()
                app, aqq = row_p[p].real, row_q[q].real
                for k in range(n):
                    if k == p or k == q:
                        continue
                    row_k = rows[k]
                    akp, akq = row_k[p], row_k[q]
                    new_kp = c * akp - spc * akq
                    new_kq = sp * akp + c * akq
                    row_k[p], row_k[q] = new_kp, new_kq
                    row_p[k], row_q[k] = new_kp.conjugate(), new_kq.conjugate()
                row_p[p] = app - t * mag
                row_q[q] = aqq + t * mag
                row_p[q] = row_q[p] = 0j
        off = _off_norm(rows)
    else:
        if off >= STALL_TOL * scale:
            raise NoConvergence(
                f"Jacobi sweeps exhausted ({max_sweeps}) with off-diagonal norm {off:.3e}"
            )
    return np.sort(np.array([rows[i][i].real for i in range(n)]))[::-1]


def _xlog2x(p):
    p = np.asarray(p, dtype=float)
    out = np.zeros_like(p)
    mask = p > 0
    out[mask] = p[mask] * np.log2(p[mask])
    return out


def binary_entropy(x):
    """H(x) = -x log2 x - (1-x) log2(1-x), with 0 log 0 = 0."""
    x = float(x)
    if not (-PROB_TOL <= x <= 1 + PROB_TOL):
        raise DomainError(f"binary entropy argument {x!r} outside [0, 1]")
    x = min(max(x, 0.0), 1.0)
    if x == 0.0 or x == 1.0:
        return 0.0
    return -x * math.log2(x) - (1 - x) * math.log2(1 - x)


def binary_entropy_array(x):
    """Vectorised :func:`binary_entropy`; out-of-range values are clipped."""
    x = np.clip(np.asarray(x, dtype=float), 0.0, 1.0)
    return -(_xlog2x(x) + _xlog2x(1.0 - x))


def shannon_entropy(p):
    """Shannon entropy (bits) of a probability vector.

    Entries down to ``-1e-12`` are tolerated and clamped to zero; the sum
    must be within ``1e-9`` of one.
    """
    p = np.asarray(p, dtype=float).ravel()
    if p.size == 0 or np.any(p < -PROB_TOL):
        raise DomainError("probability vector has negative entries")
    total = float(p.sum())
    if abs(total - 1.0) > NORM_TOL:
        raise DomainError(f"probabilities sum to {total!r}, not 1")
    p = np.clip(p, 0.0, 1.0)
    return float(-_xlog2x(p).sum())


def spectral_entropy(eigenvalues):
    """-sum(l log2 l) over eigenvalues clamped to [0, 1]."""
    lam = np.clip(np.asarray(eigenvalues, dtype=float), 0.0, 1.0)
    return float(-_xlog2x(lam).sum())


def von_neumann_entropy(rho):
    """Von Neumann entropy S(rho) in bits."""
    return spectral_entropy(hermitian_eigenvalues(rho))
