import numpy as np
import pytest

from charpint.grid import EXTRAPOLATION, PERIODIC
from charpint.problems import (ACOUSTICS_CFL, CATALOG, acoustics_problem,
                               acoustics_pulse, initial_condition,
                               material_functions, nonlinear_problem,
                               tile_time_grid)


class TestTimeTiling:
    def test_exact_divisor_kept(self):
        dt, n_t = tile_time_grid(1.0, 0.125)
        assert n_t == 9 and dt == pytest.approx(0.125)

    def test_shrinks_to_tile(self):
        dt, n_t = tile_time_grid(1.0, 0.3)
        assert n_t == 5
        assert dt == pytest.approx(0.25)
        assert (n_t - 1) * dt == pytest.approx(1.0)
        assert dt <= 0.3


class TestAcousticsCatalog:
    def test_pulse_spot_values(self):
        x = np.array([0.5, 0.1, 0.45])
        p, u = acoustics_pulse(x)
        # midpoint of the pulse: cos(pi) = -1 so p = 10/4
        assert p[0] == pytest.approx(2.5)
        assert p[1] == pytest.approx(1.0)
        assert p[2] == pytest.approx(
            0.25 * (7 - 3 * np.cos(10 * np.pi * 0.45 - 4 * np.pi)))
        assert np.all(u == 0)

    def test_material_1_max_speed(self):
        x = np.linspace(0, 1, 10001)
        c_fun, Z_fun = material_functions(1)
        assert np.max(c_fun(x)) == pytest.approx(1.5)
        assert np.all(Z_fun(x) == 1.0)

    def test_material_3_values(self):
        c_fun, Z_fun = material_functions(3)
        assert c_fun(np.array([0.5]))[0] == 2.0
        assert c_fun(np.array([0.1]))[0] == 0.6
        assert Z_fun(np.array([0.5]))[0] == 2.0
        assert Z_fun(np.array([0.1]))[0] == 6.0

    def test_material_4_layers(self):
        c_fun, Z_fun = material_functions(4)
        x = np.array([0.01, 0.07, 0.13])
        np.testing.assert_allclose(c_fun(x), 1.0)
        np.testing.assert_allclose(Z_fun(x), [1.0, 2.0, 1.0])

    def test_material_5_seeded_and_bounded(self):
        c_fun, Z_fun = material_functions(5, seed=42)
        c_fun2, _ = material_functions(5, seed=42)
        x = np.linspace(0.001, 0.999, 500)
        np.testing.assert_array_equal(c_fun(x), c_fun2(x))
        assert np.all((c_fun(x) >= 0.5) & (c_fun(x) <= 2.5))
        assert np.all((Z_fun(x) >= 0.5) & (Z_fun(x) <= 2.5))
        # 16 distinct layers
        assert len(np.unique(c_fun(x))) == 16

    def test_default_time_step(self):
        grid, material, q0 = acoustics_problem(1, 256)
        target = ACOUSTICS_CFL * grid.h / np.max(material.c)
        assert grid.dt <= target + 1e-15
        assert grid.T == pytest.approx(1.0)
        assert grid.bc == PERIODIC

    def test_unknown_material(self):
        with pytest.raises(ValueError):
            material_functions(6)


class TestNonlinearCatalog:
    def test_idp_spot_value(self):
        x = np.array([2.5])
        q = initial_condition("idp", x, 0.1)
        assert q[0, 0] == pytest.approx(1.1)  # peak of the bump
        assert q[1, 0] == 0.0

    def test_idpp_energy_consistent(self):
        x = np.array([2.5, 0.0])
        q = initial_condition("idpp", x, 0.2, gamma=1.4)
        np.testing.assert_allclose(q[2], q[0] / 0.4)  # E = p/(gamma-1), p=rho

    def test_sod_left_right(self):
        x = np.array([0.25, 0.75])
        q = initial_condition("sod", x, 0.125, gamma=1.4)
        np.testing.assert_allclose(q[0], [1.0, 0.875])

    def test_db_jump(self):
        x = np.array([-1.0, 1.0])
        q = initial_condition("db", x, 0.1)
        np.testing.assert_allclose(q[0], [1.1, 1.0])

    @pytest.mark.parametrize("name", sorted(CATALOG))
    def test_cfl_respected(self, name):
        model, grid, q0 = nonlinear_problem(name, 64)
        c0 = model.max_wavespeed(q0) * grid.dt / grid.h
        assert c0 <= CATALOG[name].cfl + 1e-12
        assert grid.T == pytest.approx(CATALOG[name].T)

    def test_boundary_kinds(self):
        assert CATALOG["idp"].bc == PERIODIC
        assert CATALOG["sod"].bc == EXTRAPOLATION

    def test_unknown_problem(self):
        with pytest.raises(ValueError):
            nonlinear_problem("blast", 64)
