# SPDX-License-Identifier: Apache-2.0
import csv
import io
import math

import pytest

import keyhole_sop as ks


def test_bessel_values():
    assert ks.bessel_k1(1.0) == pytest.approx(0.6019072301972346, rel=1e-12)
    assert ks.z_times_k1(0.0) == 1.0
    with pytest.raises(ValueError):
        ks.bessel_k1(0.0)


def test_default_point_three_ways_agree():
    p = ks.default_params()
    assert p.num_users == 2 and p.num_eves == 3
    cf = ks.sop_closed_form(p)
    q = ks.sop_quadrature(p, 1e-9)
    assert cf.method == ks.Method.closed_form
    assert abs(cf.value - q.value) <= 1e-6 * cf.value
    est = ks.estimate_sop(p, 200_000, seed=7)
    assert abs(est.sop_hat - cf.value) <= 4 * est.std_error
    assert est.ci95_low <= est.sop_hat <= est.ci95_high


def test_symmetric_half():
    p = ks.SystemParams(num_users=1, num_eves=1, zeta_hd=2.0, zeta_he=2.0, r_th=0.0)
    assert ks.sop_closed_form(p).value == pytest.approx(0.5, abs=1e-12)
    assert ks.sop_asymptotic(p).value == pytest.approx(0.5, abs=1e-12)


def test_stream_count_does_not_change_estimate():
    p = ks.default_params()
    a = ks.estimate_sop(p, 10_000, seed=3, num_streams=1)
    b = ks.estimate_sop(p, 10_000, seed=3, num_streams=4)
    assert a.sop_hat == b.sop_hat


def test_invalid_params_raise():
    with pytest.raises(ValueError):
        ks.SystemParams(num_users=0)
    p = ks.default_params()
    p.num_users = 61
    with pytest.raises(ValueError, match="binomial cap"):
        ks.sop_closed_form(p)


def test_parse_params_and_recipe_csv():
    p = ks.parse_params("M = 5\nN = 1\ngamma_bar_d_db = 20\n")
    assert p.num_users == 5 and p.gamma_bar_e == pytest.approx(100.0)
    assert {"fig2", "fig3", "fig4", "fig5"} <= set(ks.builtin_recipe_names())
    text = ks.run_recipe_csv("fig3", seed=1, samples=1000)
    rows = list(csv.DictReader(io.StringIO(text)))
    assert rows[0].keys() >= {"series", "M", "closed_form", "monte_carlo", "mc_std_error"}
    assert len(rows) == 36
    assert all(0.0 <= float(r["closed_form"]) <= 1.0 for r in rows)
    assert math.isclose(ks.secrecy_rate(3.0, 1.0), 1.0)
