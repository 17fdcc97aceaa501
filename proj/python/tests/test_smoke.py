import json
import math
import os

import pytest

import asymlab

DATA = os.environ.get("ASYMLAB_DATA_DIR", os.path.join(os.path.dirname(__file__), "..", "..", "data"))


def test_density_of_uniform_sample():
    x, _ = asymlab.sample_gem("cube", 2000, 3)
    model = asymlab.fit_density(x)
    assert abs(model.raw_integral - 1.0) < 1e-6
    assert len(model.values) == model.grid.length == 256
    inside = model.evaluate([0.25, 0.5, 0.75])
    assert all(abs(v - 1.0) < 0.2 for v in inside)
    assert model.evaluate([50.0]) == [1e-12]


def test_cross_fit_and_decision():
    x, y = asymlab.sample_gem("square", 1000, 7)
    fit = asymlab.cross_fit(x, y)
    back = asymlab.cross_fit(y, x)
    assert fit.c_hat == -back.c_hat
    assert fit.n == 500
    assert fit.ci_lower < fit.c_hat < fit.ci_upper
    assert math.isclose(fit.standard_error, math.sqrt(fit.sigma_c_sq / fit.n))
    decision = asymlab.decide_direction(fit, "contracting")
    assert decision["supported"]
    assert decision["decision"] == "DirectionSupported"
    with pytest.raises(asymlab.ConfigError):
        asymlab.decide_direction(fit, "boundary")


def test_noise_free_npgem_matches_gem():
    assert asymlab.sample_npgem("sqrt", 0.0, 0.0, 50, 9) == asymlab.sample_gem("sqrt", 50, 9)


def test_catalog_and_analytic_values():
    assert "sin_half_pi" in asymlab.catalog_ids()
    gm, dynamics = asymlab.classify_dynamics("square")
    assert math.isclose(gm, 2.0 / math.e, rel_tol=1e-10)
    assert dynamics == "contracting"
    assert asymlab.analytic_coefficient("lognormal_normal") == 5.0
    assert math.isclose(asymlab.sigma_crit(0.5, 2.0), (math.e - 1.0) / 2.0)


def test_runners_are_seeded():
    a = asymlab.run_table1("sqrt", 0.0, n=200, replicates=6, seed=1)
    b = asymlab.run_table1("sqrt", 0.0, n=200, replicates=6, seed=1, jobs=2)
    assert a["values"] == b["values"]
    cov = asymlab.run_table2("i", 200, replicates=10, seed=1)
    assert 0.0 <= cov["coverage"] <= 1.0
    acc = asymlab.run_accuracy("exp", 0.0, 0.0, n=200, replicates=5, seed=1)
    assert acc["dynamics"] == "expanding"


def test_bootstrap_diagnostic_noise_free():
    x, y = asymlab.sample_gem("square", 400, 2)
    report = asymlab.bootstrap_diagnostic(x, y, bootstrap=200, seed=4)
    assert report["sigma_hat"] < 1e-4
    assert report["diff_ci_lower"] <= report["diff_ci_upper"]
    with pytest.raises(asymlab.ConfigError):
        asymlab.bootstrap_diagnostic(x, y, bootstrap=10)


def test_estimate_report_on_fixture():
    path = os.path.join(DATA, "lognormal_normal_n1000.csv")
    report = asymlab.estimate_report(path)
    assert report["schema_version"] == "asymlab.report/1"
    assert 4.7 <= report["result"]["c_hat"] <= 5.3
    tested = json.loads(asymlab.estimate_csv(path, dynamics="expanding"))
    assert tested["result"]["test"]["decision"] == "DirectionNotSupported"
    with pytest.raises(asymlab.InputError):
        asymlab.estimate_csv(path + ".missing")
