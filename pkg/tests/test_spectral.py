"""Eigenvalue canonicalization via the unitary automorphism."""

import numpy as np
import pytest

from quatwell.quaternion import I, J, ONE, Quaternion
from quatwell.spectral import ImaginaryEigenvalue, apply_automorphism, canonicalize

from .oracles import quat_mul


def _residual(ev: ImaginaryEigenvalue, form) -> float:
    rotated = form.u.conjugate() * ev.as_quaternion() * form.u
    return (rotated - Quaternion(0.0, form.energy, 0.0, 0.0)).norm()


class TestApplyAutomorphism:
    def test_identity(self):
        assert apply_automorphism(I, ONE) == I

    def test_j_flips_i(self):
        result = apply_automorphism(I, J)
        assert result == -I
        # cross-check against the table oracle
        expected = quat_mul(quat_mul((0, 0, -1, 0), (0, 1, 0, 0)), (0, 0, 1, 0))
        assert (result.w, result.x, result.y, result.z) == expected

    def test_norm_preserved(self):
        rng = np.random.default_rng(41)
        for row in rng.uniform(-1.0, 1.0, size=(100, 7)):
            lam = Quaternion(0.0, *row[:3])
            u = Quaternion(*row[3:])
            if u.norm() < 1e-3:
                continue
            u = u * (1.0 / u.norm())
            assert apply_automorphism(lam, u).norm() == pytest.approx(lam.norm(), rel=1e-12)

    def test_non_unit_rejected(self):
        with pytest.raises(ValueError):
            apply_automorphism(I, Quaternion(2.0))

    def test_scalar_part_rejected(self):
        with pytest.raises(ValueError):
            apply_automorphism(Quaternion(1.0, 1.0), ONE)


class TestCanonicalize:
    def test_already_canonical(self):
        form = canonicalize(ImaginaryEigenvalue(5.0, 0.0, 0.0))
        assert form.energy == 5.0
        assert form.u == ONE

    def test_worked_example_3i_4j(self):
        ev = ImaginaryEigenvalue(3.0, 4.0, 0.0)
        form = canonicalize(ev)
        assert form.energy == pytest.approx(5.0, rel=1e-15)
        assert form.u.w == pytest.approx(0.894427, abs=1e-6)
        assert form.u.z == pytest.approx(0.447214, abs=1e-6)
        assert form.u.x == form.u.y == 0.0
        assert _residual(ev, form) < 1e-12

    def test_minus_i_ray_uses_j(self):
        ev = ImaginaryEigenvalue(-5.0, 0.0, 0.0)
        form = canonicalize(ev)
        assert form.energy == 5.0
        assert form.u == J
        assert _residual(ev, form) < 1e-12

    def test_zero_eigenvalue(self):
        form = canonicalize(ImaginaryEigenvalue(0.0, 0.0, 0.0))
        assert form.energy == 0.0
        assert form.u == ONE

    def test_random_postcondition(self):
        rng = np.random.default_rng(43)
        for e1, e2, e3 in rng.uniform(-1.0, 1.0, size=(2000, 3)):
            ev = ImaginaryEigenvalue(e1, e2, e3)
            form = canonicalize(ev)
            assert abs(form.u.norm() - 1.0) < 1e-13
            assert _residual(ev, form) < 1e-12 * max(1.0, ev.norm)

    def test_near_degenerate_ray(self):
        # approaching -i: the rotation formula must not lose accuracy
        for eps in (1e-6, 1e-9, 1e-12, 1e-15):
            ev = ImaginaryEigenvalue(-1.0, eps, -0.5 * eps)
            form = canonicalize(ev)
            assert _residual(ev, form) < 1e-13
            assert abs(form.u.norm() - 1.0) < 1e-13

    def test_scale_equivariance(self):
        rng = np.random.default_rng(47)
        for e1, e2, e3, s in rng.uniform(0.1, 2.0, size=(200, 4)):
            ev = ImaginaryEigenvalue(e1 - 1.0, e2, e3)
            scaled = ImaginaryEigenvalue(s * ev.e1, s * ev.e2, s * ev.e3)
            form = canonicalize(ev)
            form_s = canonicalize(scaled)
            assert form_s.energy == pytest.approx(s * form.energy, rel=1e-12)
            # the unscaled u canonicalizes the scaled eigenvalue too
            rotated = form.u.conjugate() * scaled.as_quaternion() * form.u
            target = Quaternion(0.0, form_s.energy, 0.0, 0.0)
            assert (rotated - target).norm() < 1e-12 * max(1.0, scaled.norm)

    def test_k_direction(self):
        ev = ImaginaryEigenvalue(0.0, 0.0, 2.0)
        form = canonicalize(ev)
        assert form.energy == pytest.approx(2.0)
        assert _residual(ev, form) < 1e-14
