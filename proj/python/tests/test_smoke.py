import json
import math

import numpy as np
import pytest

import nchsim


def constant_state(mesh, cfg, phi, theta):
    s = nchsim.State()
    n = mesh.num_nodes
    s.phi = np.full(n, phi)
    s.theta = np.full(n, theta)
    s.mu = np.full(n, nchsim.thermo.df_dphi(phi, theta, cfg.potential))
    return s


def test_mesh_counts():
    m = nchsim.Mesh(4)
    assert (m.num_nodes, m.num_elements, m.num_edges) == (16, 32, 48)
    assert m.num_nodes - m.num_edges + m.num_elements == 0
    assert m.node_index(5, -1) == m.node_index(1, 3)


def test_thermo_point_values():
    assert nchsim.thermo.f(0.5, 3.0) == pytest.approx(0.00125, abs=1e-12)
    assert nchsim.thermo.df_dtheta(0.5, 3.0) == pytest.approx(-2.0, abs=1e-12)
    assert nchsim.thermo.internal_energy_density(0.5, 3.0) == pytest.approx(6.00125, abs=1e-12)
    with pytest.raises(nchsim.NonpositiveTemperature):
        nchsim.thermo.f(0.5, 0.0)


def test_constant_state_is_fixed_point():
    m = nchsim.Mesh(6)
    cfg = nchsim.SchemeConfig()
    s = constant_state(m, cfg, 0.6, 4.0)
    assert np.max(np.abs(nchsim.residual(m, s, s, cfg))) <= 1e-13
    new, stats = nchsim.solve_timestep(m, s, cfg)
    assert stats.newton_iterations <= 2
    assert np.max(np.abs(new.theta - s.theta)) <= 1e-12
    assert nchsim.entropy_production(m, cfg, new, s) == 0.0


def test_jacobian_matches_finite_differences():
    sparse = pytest.importorskip("scipy.sparse")
    rng = np.random.default_rng(3)
    m = nchsim.Mesh(3)
    cfg = nchsim.SchemeConfig()

    def rand_state():
        s = nchsim.State()
        s.phi = rng.uniform(0.2, 0.8, m.num_nodes)
        s.mu = rng.uniform(-1, 1, m.num_nodes)
        s.theta = rng.uniform(1, 5, m.num_nodes)
        return s

    old, cur = rand_state(), rand_state()
    indptr, indices, data, shape = nchsim.jacobian(m, cur, old, cfg)
    jac = sparse.csr_matrix((data, indices, indptr), shape=shape).toarray()
    x = np.concatenate([cur.phi, cur.mu, cur.theta])
    n = m.num_nodes
    h = 1e-6
    for col in range(3 * n):
        plus, minus = x.copy(), x.copy()
        plus[col] += h
        minus[col] -= h
        sp, sm = nchsim.State(), nchsim.State()
        for st, v in ((sp, plus), (sm, minus)):
            st.phi, st.mu, st.theta = v[:n], v[n:2 * n], v[2 * n:]
        fd = (nchsim.residual(m, sp, old, cfg) - nchsim.residual(m, sm, old, cfg)) / (2 * h)
        scale = max(np.max(np.abs(jac[:, col])), 1e-300)
        assert np.max(np.abs(fd - jac[:, col])) / scale <= 1e-5


def test_short_run_preserves_structure():
    cfg = nchsim.RunConfig.from_json(json.dumps({
        "mesh_n": 8, "tau": 1e-3, "t_final": 5e-3,
        "initial_data": {"kind": "convergence", "center": [0.5, 0.5]},
    }))
    assert cfg.num_steps() == 5
    final, records = nchsim.run_simulation(cfg)
    assert len(records) == 6
    assert math.isclose(final.time, 5e-3)
    for a, b in zip(records, records[1:]):
        assert abs(b.mass - records[0].mass) <= 1e-12
        assert b.entropy - a.entropy >= -1e-11
        assert b.energy - a.energy <= 1e-11
        assert abs(b.production - (b.entropy - a.entropy) / cfg.tau) <= 1e-10
        assert b.theta_min > 0


def test_eoc():
    assert nchsim.eoc(4.0, 1.0) == pytest.approx(2.0)
    with pytest.raises(ValueError):
        nchsim.eoc(0.0, 1.0)
