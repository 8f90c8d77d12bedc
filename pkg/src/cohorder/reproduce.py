"""Reference values re-derived from scratch, compared at 4-decimal rounding."""
import math
from dataclasses import dataclass

import numpy as np

from . import linalg, measures, ordering, postulates, states
from .measures import Measure
from .ordering import Verdict

TOL = 5e-4


@dataclass(frozen=True)
class Row:
    name: str
    expected: object
    got: object
    passed: bool

    def line(self, width=44):
        def fmt(v):
            if isinstance(v, float):
                return f"{v:.6f}"
            return str(v)
        status = "PASS" if self.passed else "FAIL"
        return f"{status}  {self.name:<{width}} expected {fmt(self.expected):>18}  got {fmt(self.got)}"


def _num(name, expected, got, tol=TOL):
    return Row(name, float(expected), float(got), abs(float(got) - float(expected)) <= tol)


def _exact(name, expected, got):
    return Row(name, expected, got, expected == got)


def rows():
    rho1, rho2 = ordering.reference_qubit_pair()
    phi1, phi2 = ordering.reference_qutrit_pair()
    q1, q2 = states.canonicalize_qubit(rho1), states.canonicalize_qubit(rho2)
    t2 = 2 / math.sqrt(6)
    out = [
        _num("H(0.2)", 0.7219, linalg.binary_entropy(0.2)),
        _num("Shannon(12/25, 12/25, 1/25)", 1.2023, linalg.shannon_entropy([12 / 25, 12 / 25, 1 / 25])),
        _exact("rho(4/5, 0, 3/5) equals rho1", True,
               bool(np.allclose(states.from_bloch_xyz(4 / 5, 0, 3 / 5).matrix, rho1.matrix, atol=1e-12))),
        _num("rho2 canonical t", t2, q2.t),
        _num("rho2 canonical z", 0.0, q2.z),
        _exact("dephase(rho1) = diag(4/5, 1/5)", True,
               bool(np.allclose(states.dephase(rho1).matrix, np.diag([0.8, 0.2]), atol=1e-12))),
        _exact("rho2 incoherent", False, states.is_incoherent(rho2)),
        _num("C_l1 max coherent d=3", 2.0, measures.c_l1(states.maximally_coherent(3))),
        _num("C_l1(rho1)", 0.8, measures.c_l1(rho1)),
        _num("C_l1(rho2)", 0.8165, measures.c_l1(rho2)),
        _num("C_r(rho1)", 0.7219, measures.c_r(rho1)),
        _num("C_r(rho2)", 0.5576, measures.c_r(rho2)),
        _num("C_f(rho1)", 0.7219, measures.c_f_qubit(q1)),
        _num("C_f(rho2)", 0.7440, measures.c_f_qubit(q2)),
        _num("C_l1 qubit closed form (0.8, 0.6)", 0.8, measures.c_l1_qubit(states.BlochQubit(0.8, 0.6))),
        _num("C_r qubit closed form (4/5, 3/5)", 0.7219, measures.c_r_qubit(states.BlochQubit(0.8, 0.6))),
        _num("C_r qubit closed form (2/sqrt6, 0)", 0.5576, measures.c_r_qubit(states.BlochQubit(t2, 0.0))),
        _num("C_l1(phi1)", 1.5143, measures.c_l1(phi1)),
        _num("C_l1(phi2)", 1.5603, measures.c_l1(phi2)),
        _num("C_r(phi1)", 1.2023, measures.c_r(phi1)),
        _num("C_r(phi2)", 1.1568, measures.c_r(phi2)),
        _num("C_f(phi2)", 1.1568, measures.c_f_pure(phi2)),
        _num("C_l1 of embedded rho1", 0.4, measures.c_l1(states.embed_mixed(np.eye(1), rho1))),
        _num("C_r of embedded rho1", 0.7219 / 2, measures.c_r(states.embed_mixed(np.eye(1), rho1))),
    ]
    for name, s1, s2, a, b in [
        ("rho pair (l1, relent)", rho1, rho2, Measure.L1, Measure.REL_ENT),
        ("rho pair (formation, relent)", rho1, rho2, Measure.FORMATION, Measure.REL_ENT),
        ("phi pair (l1, relent)", phi1, phi2, Measure.L1, Measure.REL_ENT),
        ("phi pair (l1, formation)", phi1, phi2, Measure.L1, Measure.FORMATION),
    ]:
        v = ordering.classify_pair(s1, s2, a, b).verdict
        out.append(_exact(f"classify {name}", Verdict.ORDERING_DIFFERENT.value, v.value))

    out += [
        _exact("feasible(3/5, 4/5)", False, ordering.qubit_pair_feasible(0.6, 0.8).feasible),
        _exact("feasible(4/5, 2/sqrt6)", True, ordering.qubit_pair_feasible(0.8, t2).feasible),
        _exact("witness(3/5, 4/5)", None, ordering.find_witness(0.6, 0.8)),
    ]
    z1, z2 = ordering.find_witness(0.8, t2)
    out += [_num("witness(4/5, 2/sqrt6) z1", 0.6, z1), _num("witness(4/5, 2/sqrt6) z2", 0.0, z2)]

    fig = ordering.scan_delta_cr(0.8, t2, 201, 201)
    out += [
        _exact("scan(4/5, 2/sqrt6) has dC_r > 0 region", True, bool(fig.positive_region().any())),
        _num("scan(4/5, 2/sqrt6) dC_r at (0.6, 0)", 0.7219 - 0.5576, fig.value_at(0.6, 0.0)),
    ]
    bad = ordering.scan_delta_cr(0.6, 0.8, 201, 201)
    out.append(_exact("scan(3/5, 4/5) max dC_r <= 0", True, bool(bad.delta_cr.max() <= 0)))

    x, y, z = 0.48, 0.64, 0.6
    rho = states.from_bloch_xyz(x, y, z)
    u = postulates.diagonal_unitary_channel([0.0, states.phase_alignment_angle(x, y)])
    aligned = postulates.apply_channel(u, rho)
    out += [
        _exact("diag(1, e^{i a}) is ICPTP", True, bool(postulates.validate_icptp(u))),
        _exact("U_a rho(x,y,z) U_a^H = rho(t,z)", True,
               bool(np.allclose(aligned.matrix, states.from_bloch_xyz(0.8, 0, 0.6).matrix, atol=1e-12))),
        _num("C_r invariant under U_a", measures.c_r(rho), measures.c_r(aligned)),
    ]
    return out


def run():
    """Return ``(all_passed, report_text)``."""
    table = rows()
    width = max(len(r.name) for r in table)
    lines = [r.line(width) for r in table]
    n_pass = sum(r.passed for r in table)
    lines.append(f"{n_pass}/{len(table)} checks passed (tolerance +/-{TOL:g})")
    return n_pass == len(table), "\n".join(lines)
