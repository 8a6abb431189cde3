import math

import pytest

import polaritonkit as pk


def test_resonant_branches():
    s = pk.polariton_modes(pk.ModelParams(lambda_=1.0, gamma2=1.0))
    assert s.stable
    assert s.omega_plus * s.omega_minus == pytest.approx(1.0, rel=1e-12)
    assert s.cos2 + s.sin2 == pytest.approx(1.0, rel=1e-14)


def test_effective_mass_at_resonance():
    r = pk.effective_mass(pk.ModelParams(lambda_=1.0, gamma2=1.0))
    assert r.mass_ratio == pytest.approx(math.sqrt(5.0) / 2.0, rel=1e-12)
    assert r.fwhm_ratio == pytest.approx(r.mass_ratio ** -0.5, rel=1e-12)


def test_invalid_parameter_is_value_error():
    with pytest.raises(ValueError):
        pk.ModelParams(lambda_=-1.0)


def test_mandel_refused_at_decoupling():
    p = pk.ModelParams(lambda_=0.0, gamma2=1.0)
    assert pk.photon_stats(p).mandel_q is None
    with pytest.raises(pk.UndefinedAtDecoupling):
        pk.mandel_q(p)


def test_instability_without_a2():
    assert pk.instability_onset(4.0) == pytest.approx(2.0)
    s = pk.polariton_modes(pk.ModelParams(lambda_=2.5, gamma2=4.0, include_a2=False))
    assert not s.stable
    assert s.omega_minus is None


def test_oracle_matches_closed_form():
    p = pk.ModelParams(lambda_=1.0, gamma2=1.0)
    gs = pk.solve_converged(p)
    assert gs.converged
    stats = pk.photon_stats(p)
    assert pk.measure(gs, pk.Observable.occupation) == pytest.approx(stats.occupation, rel=1e-6)
    s = pk.polariton_modes(p)
    assert gs.energy == pytest.approx(0.5 * (s.omega_plus + s.omega_minus), rel=1e-10)


def test_gap_field_independent_at_resonance():
    p = pk.ModelParams(lambda_=0.1, gamma2=1.0)
    g0 = pk.bfield_spectrum(p, 0.0).gap_b
    assert pk.bfield_spectrum(p, 0.8).gap_b == pytest.approx(g0, abs=1e-12)


def test_power_law_fit():
    z, c, r2 = pk.fit_power_law([1.0, 2.0, 4.0, 8.0], [3.0, 6.0, 12.0, 24.0])
    assert z == pytest.approx(1.0, abs=1e-12)
    assert c == pytest.approx(3.0, rel=1e-12)
    assert r2 == pytest.approx(1.0, abs=1e-12)


def test_density_difference_conserves_norm():
    p = pk.ModelParams(lambda_=1.0, gamma2=1.0, n_particles=8)
    grid = pk.MeanFieldGrid()
    grid.n_points = 513
    cfg = pk.SolverConfig()
    cfg.refinements = 0
    d = pk.density_difference(p, grid, cfg)
    dx = d.grid[1] - d.grid[0]
    assert abs(sum(d.per_particle) * dx) < 1e-9
    assert d.centre_total() > 0.0
