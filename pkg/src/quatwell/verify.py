"""Runtime verification suite behind the `verify` CLI mode.

Re-measures the structural identities the solver relies on -- quaternion
algebra laws, eigenvalue canonicalization, the characteristic quartic, the
reality of the quantization function below the quaternionic threshold,
phase-rotation invariance of the spectrum, and agreement with the complex
limit -- and reports one pass/fail per property with the measured residual.
Sampling is seeded, so a given configuration always produces the same
report.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .quaternion import Quaternion
from .radial import PotentialSpec, characteristic_data
from .spectral import ImaginaryEigenvalue, canonicalize
from .quantization import (
    EmptyWindowError,
    QuantizationProblem,
    complex_limit_roots,
    find_bound_states,
    reality_report,
)

_SEED = 20050214


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    measured: float
    tolerance: float
    detail: str = ""


def _check(name, measured, tolerance, detail=""):
    return CheckResult(name, bool(measured < tolerance), float(measured),
                       float(tolerance), detail)


def _random_quaternions(rng, n):
    comps = rng.uniform(-1.0, 1.0, size=(n, 4))
    return [Quaternion(*row) for row in comps]


def _algebra_checks(rng, n, tol):
    ps = _random_quaternions(rng, n)
    qs = _random_quaternions(rng, n)
    rs = _random_quaternions(rng, n)
    worst_assoc = 0.0
    worst_mult = 0.0
    for p, q, r in zip(ps, qs, rs):
        lhs = (p * q) * r
        rhs = p * (q * r)
        scale = max(p.norm() * q.norm() * r.norm(), 1e-30)
        worst_assoc = max(worst_assoc, (lhs - rhs).norm() / scale)
        nm = max(p.norm() * q.norm(), 1e-30)
        worst_mult = max(worst_mult, abs((p * q).norm() - p.norm() * q.norm()) / nm)
    yield _check("quaternion-associativity", worst_assoc, tol, f"{n} random triples")
    yield _check("quaternion-norm-multiplicativity", worst_mult, tol, f"{n} random pairs")


def _canonicalization_check(rng, n, tol):
    worst = 0.0
    triples = rng.uniform(-1.0, 1.0, size=(n, 3))
    # force coverage of the degenerate -i ray and its neighborhood
    extra = [(-1.0, 0.0, 0.0), (-2.5, 0.0, 0.0), (-1.0, 1e-9, 0.0), (-1.0, 0.0, -1e-10)]
    for e1, e2, e3 in list(map(tuple, triples)) + extra:
        ev = ImaginaryEigenvalue(e1, e2, e3)
        form = canonicalize(ev)
        rotated = form.u.conjugate() * ev.as_quaternion() * form.u
        target = Quaternion(0.0, form.energy, 0.0, 0.0)
        scale = max(1.0, ev.norm)
        worst = max(worst, (rotated - target).norm() / scale,
                    abs(form.u.norm() - 1.0))
    return _check("eigenvalue-canonicalization", worst, tol,
                  f"{n} random eigenvalues plus degenerate ray")


def _random_well(rng):
    v1 = rng.uniform(0.5, 40.0)
    q = rng.uniform(0.0, 3.0) * math.sqrt(v1)
    phase = rng.uniform(0.0, 2.0 * math.pi)
    return PotentialSpec(v1, q * math.cos(phase), q * math.sin(phase))


def _quartic_check(rng, n, tol):
    worst = 0.0
    produced = 0
    while produced < n:
        pot = _random_well(rng)
        span = pot.total_threshold
        energy = rng.uniform(1e-3, 1.0) * (span - 2e-3)
        if (abs(energy - pot.q_threshold) < 1e-6
                or abs(energy - pot.total_threshold) < 1e-6):
            continue
        produced += 1
        cd = characteristic_data(energy, pot)
        const = (pot.v1 ** 2 + pot.v2 ** 2 + pot.v3 ** 2 - energy ** 2)
        for nu in (cd.nu_minus, cd.nu_plus):
            nu2 = nu * nu
            resid = abs(nu2 * nu2 - 2.0 * pot.v1 * nu2 + const)
            scale = abs(nu2) ** 2 + 2.0 * pot.v1 * abs(nu2) + abs(const)
            worst = max(worst, resid / max(scale, 1e-30))
    return _check("characteristic-quartic", worst, tol, f"{n} random wells")


def _regime_laws_check(rng, n, tol):
    worst = 0.0
    produced = 0
    while produced < n:
        pot = _random_well(rng)
        if pot.q_threshold < 1e-3:
            continue
        below = rng.random() < 0.5
        if below:
            energy = rng.uniform(1e-3, 0.999) * pot.q_threshold
        else:
            energy = pot.q_threshold + rng.uniform(1e-3, 0.999) * (
                pot.total_threshold - pot.q_threshold)
        if abs(energy - pot.q_threshold) < 1e-6:
            continue
        produced += 1
        cd = characteristic_data(energy, pot)
        zw = cd.z * cd.w
        if below:
            if cd.nu_plus != cd.nu_minus.conjugate():
                worst = max(worst, 1.0)
            worst = max(worst, abs(abs(zw) - 1.0))
        else:
            s = math.sqrt(energy ** 2 - pot.q_threshold ** 2)
            expected = pot.q_threshold ** 2 / (energy + s) ** 2
            worst = max(worst, abs(zw.imag), abs(zw.real - expected))
            if not 0.0 < zw.real <= 1.0:
                worst = max(worst, 1.0)
    return _check("characteristic-regime-laws", worst, tol,
                  f"{n} random wells, both bound regimes")


def _reality_check(prob, n_samples, tol):
    try:
        report = reality_report(prob, n_samples)
    except EmptyWindowError:
        return _check("reality-below-threshold", 0.0, tol, "empty window (kappa_q = 0)")
    detail = (f"{n_samples} samples in (0, {report.window[1]:.6g}); "
              f"max |zw|-1 = {report.max_zw_deviation:.3e}")
    return _check("reality-below-threshold", report.max_rel_imag, tol, detail)


def _zw_modulus_check(prob, n_samples, tol):
    try:
        report = reality_report(prob, n_samples)
    except EmptyWindowError:
        return _check("unit-modulus-zw", 0.0, tol, "empty window (kappa_q = 0)")
    return _check("unit-modulus-zw", report.max_zw_deviation, tol,
                  f"{n_samples} below-threshold samples")


def _rotation_check(rng, n_wells, tol):
    worst = 0.0
    detail = f"{n_wells} random wells"
    for _ in range(n_wells):
        kappa_c = rng.uniform(2.0, 11.0)
        kappa_q = rng.uniform(0.2, 0.95) * kappa_c
        prob = QuantizationProblem(kappa_c, kappa_q)
        q2 = (kappa_q ** 4)
        phase0 = rng.uniform(0.0, 2.0 * math.pi)
        theta = rng.uniform(0.0, 2.0 * math.pi)
        v2 = math.sqrt(q2) * math.cos(phase0)
        v3 = math.sqrt(q2) * math.sin(phase0)
        pot_a = PotentialSpec(kappa_c ** 2, v2, v3)
        pot_b = PotentialSpec(kappa_c ** 2,
                              v2 * math.cos(theta) - v3 * math.sin(theta),
                              v2 * math.sin(theta) + v3 * math.cos(theta))
        set_a = find_bound_states(prob, pot=pot_a)
        set_b = find_bound_states(prob, pot=pot_b)
        if len(set_a.states) != len(set_b.states):
            worst = max(worst, float(abs(len(set_a.states) - len(set_b.states))))
            detail = "spectrum size changed under rotation"
            continue
        for sa, sb in zip(set_a.states, set_b.states):
            worst = max(worst, abs(sa.x - sb.x))
    return _check("rotation-invariance", worst, tol, detail)


def _complex_limit_check(prob, tol):
    limit_prob = QuantizationProblem(prob.kappa_c, 0.0, prob.a)
    full = [st.x for st in find_bound_states(limit_prob).states]
    direct = complex_limit_roots(prob.kappa_c)
    if len(full) != len(direct):
        return _check("complex-limit-equivalence", float(abs(len(full) - len(direct))),
                      tol, "root counts differ")
    worst = max((abs(u - v) for u, v in zip(full, direct)), default=0.0)
    return _check("complex-limit-equivalence", worst, tol,
                  f"{len(full)} roots at kappa_c = {prob.kappa_c:.6g}")


def run_property_checks(prob: QuantizationProblem,
                        pot: PotentialSpec | None = None,
                        *,
                        tol_override: float | None = None,
                        algebra_samples: int = 20000,
                        eigen_samples: int = 5000,
                        well_samples: int = 5000,
                        reality_samples: int = 1000,
                        rotation_wells: int = 20,
                        seed: int = _SEED) -> list[CheckResult]:
    """Full property suite for one well configuration.

    tol_override, when given, replaces every per-property tolerance; an
    impossible value (say 1e-20) acts as a negative control that must fail.
    """
    rng = np.random.default_rng(seed)

    def tol(default):
        return default if tol_override is None else tol_override

    results = list(_algebra_checks(rng, algebra_samples, tol(1e-12)))
    results.append(_canonicalization_check(rng, eigen_samples, tol(1e-12)))
    results.append(_quartic_check(rng, well_samples, tol(1e-10)))
    results.append(_regime_laws_check(rng, well_samples, tol(1e-12)))
    results.append(_reality_check(prob, reality_samples, tol(1e-10)))
    results.append(_zw_modulus_check(prob, reality_samples, tol(1e-12)))
    results.append(_rotation_check(rng, rotation_wells, tol(1e-10)))
    results.append(_complex_limit_check(prob, tol(1e-10)))
    return results
