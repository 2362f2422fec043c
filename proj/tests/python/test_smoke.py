import math

import pytest

import collinear as cl


def test_hald_fit():
    d = cl.fixtures.hald_renamed()
    f = cl.fit(d)
    assert d.n == 13 and d.k == 4
    assert f.df_residual == 8
    assert f.sigma_hat == pytest.approx(2.446, abs=5e-4)
    assert f.coefficients[0] == pytest.approx(62.4054, abs=5e-5)
    assert cl.vif(d)[3] == pytest.approx(282.51286, rel=1e-5)


def test_groups_and_effects():
    d = cl.fixtures.hald_renamed()
    g = cl.detect_groups(cl.correlation_matrix(d.x))
    assert g.groups == [[0, 1], [2, 3]]
    s = cl.scaling_of(d)
    w = cl.variability_weights(s, [0, 1], "xi1")
    assert w.weights[0] == pytest.approx(0.47872, abs=1e-4)
    e = cl.estimate_effect(cl.fit(d), cl.average_effect([0, 1]), g, s)
    assert e.estimate == pytest.approx(0.72459, abs=1e-4)
    assert e.p == pytest.approx(2.89122e-06, rel=1e-5)
    assert e.estimable


def test_normalization_error():
    with pytest.raises(cl.Error) as info:
        cl.make_effect("bad", [0, 1], [0.5, 0.7])
    assert info.value.kind == "validation"


def test_selection_and_prediction():
    a = cl.fixtures.hald_augmented()
    g = cl.detect_groups(cl.correlation_matrix(a.x))
    r = cl.all_subsets(a, g)
    assert len(r.ranked) == 7
    assert r.chosen.adj_r2 == pytest.approx(0.97356343, abs=1e-7)
    d = cl.fixtures.hald_renamed()
    f = cl.fit(d)
    p = cl.predict(f, cl.fixtures.hald_prediction_points()[4])
    assert p.var_hat == pytest.approx(1689.1290043, rel=1e-4)
    feas = cl.feasibility(cl.scaling_of(d), cl.detect_groups(cl.correlation_matrix(d.x)),
                          cl.fixtures.hald_prediction_points()[4])
    assert not feas.feasible


def test_dataset_roundtrip_and_singular():
    d = cl.Dataset(["a", "b"], [[1, 2], [2, 4], [3, 6], [4, 8]], [1, 2, 2, 4])
    assert d.names == ["a", "b"]
    with pytest.raises(cl.Error) as info:
        cl.fit(d)
    assert info.value.kind == "numerical"


def test_simulation_small():
    cfg = cl.SimConfig()
    cfg.reps = 50
    x = cl.fixtures.sim_design()
    s = cl.scaling_of(cl.Dataset([f"x{i}" for i in range(1, 7)], x, [0.0] * 12))
    rows = cl.monte_carlo_effects(x, cfg, cl.design_effect_specs(s), cl.design_group_structure())
    assert rows[1].exact == pytest.approx(1.60822, abs=1e-5)
    assert all(math.isfinite(r.mc_var) for r in rows)
    st = cl.selection_stability(x, cfg, cl.design_group_structure())
    assert sum(c for _, c in st.grouped_counts) == 50
    cmp = cl.compare_predictors(x, cfg, cl.fixtures.sim_prediction_points())
    assert cmp[0].exact == pytest.approx(9.430008, rel=1e-7)
    assert cl.derive_seed(1, 2) == cl.derive_seed(1, 2)
