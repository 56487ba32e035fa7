import numpy as np
import pytest

from charpint.grid import (CFSplitting, DimensionMismatchError, EXTRAPOLATION,
                           PERIODIC, SpaceTimeGrid, all_at_once_residual,
                           check_conforming, f_relax, norm2,
                           relative_residual_norm, time_step_trajectory)


def make_grid(n_x=16, n_t=9, dt=0.05):
    return SpaceTimeGrid(n_x, 0.0, 1.0, n_t, dt, PERIODIC)


class TestSpaceTimeGrid:
    def test_derived_quantities(self):
        g = make_grid(n_x=20, n_t=11, dt=0.1)
        assert g.h == pytest.approx(0.05)
        assert g.T == pytest.approx(1.0)
        assert g.periodic
        assert g.cell_centers()[0] == pytest.approx(0.025)
        assert g.times()[-1] == pytest.approx(1.0)

    def test_validation(self):
        with pytest.raises(ValueError):
            SpaceTimeGrid(2, 0.0, 1.0, 9, 0.1)
        with pytest.raises(ValueError):
            SpaceTimeGrid(16, 0.0, 1.0, 1, 0.1)
        with pytest.raises(ValueError):
            SpaceTimeGrid(16, 1.0, 0.0, 9, 0.1)
        with pytest.raises(ValueError):
            SpaceTimeGrid(16, 0.0, 1.0, 9, -0.1)
        with pytest.raises(ValueError):
            SpaceTimeGrid(16, 0.0, 1.0, 9, 0.1, bc="reflecting")

    def test_extrapolation_bc(self):
        g = SpaceTimeGrid(16, 0.0, 1.0, 9, 0.1, bc=EXTRAPOLATION)
        assert not g.periodic


class TestCFSplitting:
    def test_c_points(self):
        cf = CFSplitting(4)
        assert list(cf.c_points(10)) == [0, 4, 8]
        assert cf.is_c_point(0) and cf.is_c_point(8)
        assert not cf.is_c_point(3)

    def test_m_validation(self):
        with pytest.raises(ValueError):
            CFSplitting(1)


def shift_phi(state, n):
    # simple linear step for residual/relaxation checks
    return 0.5 * state + np.roll(state, 1, axis=-1)


class TestAllAtOnce:
    def test_trajectory_residual_is_zero(self):
        rng = np.random.default_rng(0)
        q0 = rng.standard_normal((2, 16))
        q = time_step_trajectory(shift_phi, q0, 9)
        b = np.zeros_like(q)
        b[0] = q0
        r = all_at_once_residual(shift_phi, q, b)
        assert norm2(r) == 0.0

    def test_residual_of_perturbed_row(self):
        rng = np.random.default_rng(1)
        q0 = rng.standard_normal((2, 16))
        q = time_step_trajectory(shift_phi, q0, 9)
        b = np.zeros_like(q)
        b[0] = q0
        q[4] += 1.0
        r = all_at_once_residual(shift_phi, q, b)
        # rows 4 (direct) and 5 (through the step) are touched
        assert norm2(r[4]) > 0 and norm2(r[5]) > 0
        assert norm2(r[1]) == 0 and norm2(r[6]) == 0

    def test_conforming_check(self):
        with pytest.raises(DimensionMismatchError):
            check_conforming(np.zeros((3, 2, 4)), np.zeros((3, 2, 5)))


class TestFRelax:
    def test_zero_residual_at_f_points(self):
        rng = np.random.default_rng(2)
        n_t = 17
        q = rng.standard_normal((n_t, 2, 16))
        b = np.zeros_like(q)
        b[0] = q[0]
        cf = CFSplitting(4)
        out = f_relax(shift_phi, q, cf, b)
        r = all_at_once_residual(shift_phi, out, b)
        for n in range(1, n_t):
            if not cf.is_c_point(n):
                assert norm2(r[n]) <= 1e-14

    def test_c_points_untouched(self):
        rng = np.random.default_rng(3)
        q = rng.standard_normal((17, 2, 16))
        cf = CFSplitting(4)
        out = f_relax(shift_phi, q, cf)
        for n in cf.c_points(17):
            assert np.array_equal(out[n], q[n])


class TestNorms:
    def test_norm_is_deterministic(self):
        rng = np.random.default_rng(4)
        v = rng.standard_normal(1000)
        assert norm2(v) == norm2(v.copy())

    def test_relative_residual_guards(self):
        with pytest.raises(ZeroDivisionError):
            relative_residual_norm(np.ones(4), 0.0)
        with pytest.raises(ValueError):
            relative_residual_norm(np.ones(4), -1.0)
