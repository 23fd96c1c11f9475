import numpy as np
import pytest

from rydladder.cloud import (Cloud, CloudGeometry, make_cloud, pair_potentials,
                             positions_csv, sample_positions, sphere_radius_from_density)
from rydladder.errors import ConfigError, SamplingError
from rydladder.params import mhz


class TestSampling:
    def test_single_atom(self):
        g = CloudGeometry(n_atoms=1, radius=5.0, r_min=0.0, seed=1)
        pos = sample_positions(g)
        assert pos.shape == (1, 3)
        assert pos[0] @ pos[0] <= 25.0

    def test_same_seed_bit_identical(self):
        g = CloudGeometry(n_atoms=40, radius=8.0, r_min=0.5, seed=99)
        assert np.array_equal(sample_positions(g), sample_positions(g))

    def test_different_seeds_differ(self):
        g1 = CloudGeometry(n_atoms=10, radius=8.0, seed=1)
        g2 = CloudGeometry(n_atoms=10, radius=8.0, seed=2)
        assert not np.array_equal(sample_positions(g1), sample_positions(g2))

    def test_uniform_ball_mean_radius(self):
        # exact moment of the uniform ball: <r> = 3R/4, var(r/R) = 3/80
        g = CloudGeometry(n_atoms=1000, radius=2.0, r_min=0.0, seed=12345)
        r = np.linalg.norm(sample_positions(g), axis=1)
        se = np.sqrt(3.0 / 80.0) * g.radius / np.sqrt(g.n_atoms)
        assert abs(r.mean() - 0.75 * g.radius) <= 3.0 * se

    def test_r_min_respected(self):
        g = CloudGeometry(n_atoms=60, radius=6.0, r_min=1.0, seed=3)
        pos = sample_positions(g)
        d = np.linalg.norm(pos[:, None, :] - pos[None, :, :], axis=-1)
        np.fill_diagonal(d, np.inf)
        assert d.min() >= 1.0

    def test_infeasible_density_raises(self):
        g = CloudGeometry(n_atoms=100, radius=1.0, r_min=1.5, seed=4)
        with pytest.raises(SamplingError, match="r_min"):
            sample_positions(g)

    def test_box_shape_within_bounds(self):
        g = CloudGeometry(n_atoms=50, shape="box", edges=(4.0, 2.0, 8.0), r_min=0.2, seed=5)
        pos = sample_positions(g)
        assert (np.abs(pos) <= np.array([2.0, 1.0, 4.0])).all()

    def test_geometry_validation(self):
        with pytest.raises(ConfigError):
            CloudGeometry(n_atoms=0, radius=5.0)
        with pytest.raises(ConfigError):
            CloudGeometry(n_atoms=2, radius=-1.0)
        with pytest.raises(ConfigError):
            CloudGeometry(n_atoms=2, shape="torus", radius=1.0)

    def test_density_to_radius(self):
        r = sphere_radius_from_density(50, 0.0119366207319)  # ~50/(4/3 pi 10^3)
        assert r == pytest.approx(10.0, rel=1e-10)


class TestPairPotentials:
    def test_unit_distance(self):
        pos = np.array([[0.0, 0.0, 0.0], [1.0, 0.0, 0.0]])
        v = pair_potentials(pos, mhz(100.0))
        assert v[0, 1] == pytest.approx(mhz(100.0), rel=1e-14)
        assert v[1, 0] == v[0, 1]
        assert v[0, 0] == 0.0 and v[1, 1] == 0.0

    def test_doubling_coordinates_scales_by_64(self):
        rng = np.random.default_rng(0)
        pos = rng.uniform(-3, 3, size=(8, 3))
        v1 = pair_potentials(pos, 1.0)
        v2 = pair_potentials(2.0 * pos, 1.0)
        off = ~np.eye(8, dtype=bool)
        assert np.allclose(v2[off] * 64.0, v1[off], rtol=1e-12)

    def test_three_collinear_atoms(self):
        pos = np.array([[0.0, 0.0, 0.0], [1.0, 0.0, 0.0], [2.0, 0.0, 0.0]])
        k = 7.0
        v = pair_potentials(pos, k)
        assert v[0, 1] == pytest.approx(k)
        assert v[1, 2] == pytest.approx(k)
        assert v[0, 2] == pytest.approx(k / 64.0)

    def test_translation_rotation_invariance(self):
        rng = np.random.default_rng(1)
        pos = rng.uniform(-4, 4, size=(12, 3))
        v = pair_potentials(pos, 2.5)
        # random rotation via QR, plus a translation
        q, _ = np.linalg.qr(rng.normal(size=(3, 3)))
        moved = pos @ q.T + np.array([10.0, -3.0, 0.4])
        v2 = pair_potentials(moved, 2.5)
        off = ~np.eye(12, dtype=bool)
        assert np.abs((v2[off] - v[off]) / v[off]).max() <= 1e-12

    def test_monotone_decrease_with_separation(self):
        vals = [pair_potentials(np.array([[0.0, 0, 0], [d, 0, 0]]), 1.0)[0, 1]
                for d in (0.5, 1.0, 2.0, 4.0)]
        assert all(a > b for a, b in zip(vals, vals[1:]))

    def test_coincident_atoms_raise(self):
        pos = np.zeros((2, 3))
        with pytest.raises(SamplingError, match="coincident"):
            pair_potentials(pos, 1.0)

    def test_negative_c6_gives_negative_potentials(self):
        pos = np.array([[0.0, 0, 0], [1.5, 0, 0]])
        assert pair_potentials(pos, -2.0)[0, 1] < 0


class TestCloud:
    def test_make_cloud_consistency(self):
        g = CloudGeometry(n_atoms=20, radius=7.0, r_min=0.5, seed=21)
        cloud = make_cloud(g, mhz(50.0))
        assert cloud.n_atoms == 20
        assert np.array_equal(cloud.potentials, cloud.potentials.T)
        assert np.array_equal(np.diag(cloud.potentials), np.zeros(20))
        expected = pair_potentials(cloud.positions, mhz(50.0))
        assert np.array_equal(cloud.potentials, expected)

    def test_positions_csv_round_trip(self):
        g = CloudGeometry(n_atoms=5, radius=3.0, seed=8)
        pos = sample_positions(g)
        text = positions_csv(pos)
        lines = text.strip().splitlines()
        assert lines[0] == "x_um,y_um,z_um"
        parsed = np.array([[float(v) for v in ln.split(",")] for ln in lines[1:]])
        assert np.allclose(parsed, pos, rtol=1e-10)
