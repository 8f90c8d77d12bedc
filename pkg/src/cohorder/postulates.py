"""Checks of the coherence-measure postulates under incoherent operations.

C1 faithfulness, C2 monotonicity, C3 selective monotonicity, C4 convexity.
Channels are Kraus sets whose operators each have at most one nonzero
entry per column, which is what makes them send diagonal states to
diagonal states.
"""
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionMismatch, DomainError, InvalidChannel
from .measures import Measure, coherence
from .states import DensityMatrix, as_density, is_incoherent

COMPLETENESS_TOL = 1e-10
NONZERO_TOL = 1e-12
BRANCH_CUTOFF = 1e-12
MARGIN = 1e-9
WEIGHT_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class KrausSet:
    operators: tuple

    def __post_init__(self):
        ops = tuple(np.array(k, dtype=np.complex128) for k in self.operators)
        if not ops:
            raise InvalidChannel("a Kraus set needs at least one operator")
        object.__setattr__(self, "operators", ops)

    @property
    def dim(self):
        return self.operators[0].shape[1]

    def __len__(self):
        return len(self.operators)


@dataclass(frozen=True)
class IcptpCheck:
    valid: bool
    reason: str = ""
    index: int = -1

    def __bool__(self):
        return self.valid


def validate_icptp(ks):
    """Check completeness and the one-nonzero-per-column incoherence condition.

    Returns an :class:`IcptpCheck` that is truthy when both hold; otherwise
    ``reason`` names the first violated condition and ``index`` the operator.
    """
    d = ks.dim
    for i, k in enumerate(ks.operators):
        if k.shape != (d, d):
            return IcptpCheck(False, f"operator {i} has shape {k.shape}, expected {(d, d)}", i)
        if not np.all(np.isfinite(k)):
            return IcptpCheck(False, f"operator {i} has non-finite entries", i)
    total = sum(k.conj().T @ k for k in ks.operators)
    residual = float(np.max(np.abs(total - np.eye(d))))
    if residual > COMPLETENESS_TOL:
        return IcptpCheck(False, f"completeness: max |sum K^H K - I| = {residual:.3e}")
    for i, k in enumerate(ks.operators):
        counts = np.sum(np.abs(k) > NONZERO_TOL, axis=0)
        if np.any(counts > 1):
            col = int(np.argmax(counts > 1))
            return IcptpCheck(False, f"incoherence: operator {i} column {col} has "
                                     f"{int(counts[col])} nonzero entries", i)
    return IcptpCheck(True)


def _require_valid(ks, rho):
    check = validate_icptp(ks)
    if not check:
        raise InvalidChannel(check.reason)
    if ks.dim != rho.dim:
        raise DimensionMismatch(f"channel acts on dim {ks.dim}, state has dim {rho.dim}")


def apply_channel(ks, rho):
    """``sum_i K_i rho K_i^H`` for a validated incoherent Kraus set."""
    rho = as_density(rho)
    _require_valid(ks, rho)
    out = sum(k @ rho.matrix @ k.conj().T for k in ks.operators)
    return DensityMatrix(out)


def branches(ks, rho):
    """Normalised branch states ``K_i rho K_i^H / p_i`` with their ``p_i``.

    Branches with ``p_i < 1e-12`` are dropped.
    """
    rho = as_density(rho)
    _require_valid(ks, rho)
    out = []
    for k in ks.operators:
        sigma = k @ rho.matrix @ k.conj().T
        p = float(np.trace(sigma).real)
        if p < BRANCH_CUTOFF:
            continue
        out.append((p, DensityMatrix(sigma / p)))
    return out


def dephasing_channel(d):
    return KrausSet(tuple(np.diag(np.eye(d)[i]) for i in range(d)))


def diagonal_unitary_channel(phases):
    return KrausSet((np.diag(np.exp(1j * np.asarray(phases, dtype=float))),))


def _random_phases(rng, d):
    return np.exp(2j * np.pi * rng.random(d))


def _permutation(rng, d):
    return np.eye(d)[:, rng.permutation(d)]


def random_incoherent_channel(d, n_kraus, seed):
    """Random incoherent Kraus set with exactly ``n_kraus`` operators.

    Three families, picked by the seeded generator:

    * mixture of incoherent unitaries ``sqrt(p_i) D_i P_i`` (phases times a
      permutation), used with probability 1/2 and always when ``n_kraus = 1``;
    * the dephasing projectors, weighted by ``q``, mixed with incoherent
      unitaries (needs ``n_kraus >= d``), probability 1/4;
    * column-weighted operators ``P_i diag(c_i)`` with
      ``sum_i |c_i[j]|^2 = 1`` for every column ``j``; these include
      amplitude-damping-like decays and are non-unitary in general.

    Deterministic in ``seed``.
    """
    if int(d) != d or d < 2:
        raise DomainError(f"d must be an integer >= 2, got {d!r}")
    if int(n_kraus) != n_kraus or n_kraus < 1:
        raise DomainError(f"n_kraus must be an integer >= 1, got {n_kraus!r}")
    d, n = int(d), int(n_kraus)
    rng = np.random.default_rng(seed)
    roll = rng.random()

    if n == 1 or roll < 0.5:
        p = rng.dirichlet(np.ones(n))
        ops = [math.sqrt(p[i]) * np.diag(_random_phases(rng, d)) @ _permutation(rng, d)
               for i in range(n)]
    elif roll < 0.75 and n >= d:
        q = 1.0 if n == d else rng.uniform(0.05, 0.95)
        u = _permutation(rng, d) @ np.diag(_random_phases(rng, d))
        ops = [math.sqrt(q) * u @ np.diag(np.eye(d)[i]) for i in range(d)]
        if n > d:
            p = rng.dirichlet(np.ones(n - d))
            ops += [math.sqrt((1 - q) * p[i]) * np.diag(_random_phases(rng, d))
                    @ _permutation(rng, d) for i in range(n - d)]
    else:
        # sparse weights favour operators that touch only a few columns
        w = rng.random((n, d)) ** 3
        w /= w.sum(axis=0, keepdims=True)
        c = np.sqrt(w) * np.exp(2j * np.pi * rng.random((n, d)))
        ops = [_permutation(rng, d) @ np.diag(c[i]) for i in range(n)]
    return KrausSet(tuple(ops))


@dataclass(frozen=True)
class PostulateCheck:
    """Outcome of one postulate check; ``margin >= -1e-9`` means it passed."""

    postulate: str
    measure: Measure
    passed: bool
    margin: float
    details: dict = field(default_factory=dict, compare=False)

    def __bool__(self):
        return self.passed


def check_faithfulness(rho, measure, tol=MARGIN):
    """C1: ``C >= 0``, and ``C`` vanishes exactly on diagonal states."""
    measure = Measure.parse(measure)
    rho = as_density(rho)
    value = coherence(rho, measure)
    incoherent = is_incoherent(rho)
    zero = abs(value) <= tol
    passed = value >= -tol and zero == incoherent
    # distance from the decision threshold, signed so that failures are negative
    margin = (tol - abs(value)) if incoherent else (value - tol)
    return PostulateCheck("C1", measure, passed, margin,
                          {"value": value, "incoherent": incoherent})


def check_monotonicity(ks, rho, measure, tol=MARGIN):
    """C2: ``C(rho) >= C(Phi(rho))``."""
    measure = Measure.parse(measure)
    rho = as_density(rho)
    before = coherence(rho, measure)
    after = coherence(apply_channel(ks, rho), measure)
    margin = before - after
    return PostulateCheck("C2", measure, margin >= -tol, margin,
                          {"before": before, "after": after})


def check_selective_monotonicity(ks, rho, measure, tol=MARGIN):
    """C3: ``C(rho) >= sum_i p_i C(rho_i)`` over the normalised branches."""
    measure = Measure.parse(measure)
    rho = as_density(rho)
    before = coherence(rho, measure)
    avg = sum(p * coherence(sigma, measure) for p, sigma in branches(ks, rho))
    margin = before - avg
    return PostulateCheck("C3", measure, margin >= -tol, margin,
                          {"before": before, "average": avg})


def check_convexity(states, weights, measure, tol=MARGIN):
    """C4: ``C(sum_i p_i rho_i) <= sum_i p_i C(rho_i)``."""
    measure = Measure.parse(measure)
    states = [as_density(s) for s in states]
    weights = np.asarray(weights, dtype=float).ravel()
    if len(states) != weights.size or not states:
        raise DimensionMismatch(f"{len(states)} states but {weights.size} weights")
    dims = {s.dim for s in states}
    if len(dims) != 1:
        raise DimensionMismatch(f"states have mixed dimensions {sorted(dims)}")
    if np.any(weights < 0) or abs(weights.sum() - 1.0) > WEIGHT_TOL:
        raise DomainError(f"weights must be a probability vector, sum = {weights.sum()!r}")
    mixed = DensityMatrix(sum(w * s.matrix for w, s in zip(weights, states)))
    lhs = coherence(mixed, measure)
    rhs = float(sum(w * coherence(s, measure) for w, s in zip(weights, states)))
    margin = rhs - lhs
    return PostulateCheck("C4", measure, margin >= -tol, margin,
                          {"mixture": lhs, "average": rhs})


def random_density(rng, d, rank=None):
    """Random density matrix ``G G^H / tr`` from a complex Ginibre ``d x rank`` block."""
    rank = int(rng.integers(1, d + 1)) if rank is None else rank
    g = rng.normal(size=(d, rank)) + 1j * rng.normal(size=(d, rank))
    m = g @ g.conj().T
    return DensityMatrix(m / np.trace(m).real)


def random_incoherent_density(rng, d):
    return DensityMatrix(np.diag(rng.dirichlet(np.ones(d))))


@dataclass(frozen=True)
class TrialRecord:
    trial_id: int
    postulate: str
    measure: Measure
    dim: int
    passed: bool
    margin: float

    def line(self):
        verdict = "PASS" if self.passed else "FAIL"
        return (f"{self.trial_id}, {self.postulate}, {self.measure.value}, {self.dim}, "
                f"{verdict}, {self.margin:.3e}")


IMPLICATION = "C3+C4=>C2"


def run_trial(trial_id, d, seed, measures=(Measure.L1, Measure.REL_ENT)):
    """One trial: every postulate once per measure, on freshly drawn inputs.

    Besides C1-C4 the trial records whether passing C3 on the channel's
    branches together with C4 on the branch mixture implied passing C2.
    """
    rng = np.random.default_rng([seed, trial_id])
    measures = [Measure.parse(m) for m in measures]

    c1_state = random_incoherent_density(rng, d) if trial_id % 2 == 0 else random_density(rng, d)
    ks = random_incoherent_channel(d, int(rng.integers(1, d + 3)), int(rng.integers(2**31)))
    rho = random_density(rng, d)
    parts = branches(ks, rho)
    k = int(rng.integers(2, 5))
    mix_states = [random_density(rng, d) for _ in range(k)]
    mix_weights = rng.dirichlet(np.ones(k))

    records = []
    for m in measures:
        c1 = check_faithfulness(c1_state, m)
        c2 = check_monotonicity(ks, rho, m)
        c3 = check_selective_monotonicity(ks, rho, m)
        c4 = check_convexity(mix_states, mix_weights, m)
        # branch mixture equals Phi(rho): C3 then C4 on it bound C(Phi(rho))
        c4_branches = check_convexity([s for _, s in parts], [p for p, _ in parts], m)
        implied = not (c3.passed and c4_branches.passed) or c2.passed
        for check in (c1, c2, c3, c4):
            records.append(TrialRecord(trial_id, check.postulate, m, d, check.passed, check.margin))
        records.append(TrialRecord(trial_id, IMPLICATION, m, d, implied,
                                   min(c3.margin, c4_branches.margin, c2.margin)))
    return records


def run_campaign(trials, seed=0, dims=(2, 3, 4), measures=(Measure.L1, Measure.REL_ENT)):
    """Run ``trials`` trials, cycling through ``dims``; returns all records."""
    records = []
    for trial_id in range(trials):
        d = dims[trial_id % len(dims)]
        records.extend(run_trial(trial_id, d, seed, measures))
    return records


def format_report(records):
    header = "trial_id, postulate, measure, dim, verdict, margin"
    return "\n".join([header] + [r.line() for r in records])
