"""End-to-end smoke tests for the python bindings."""

import math

import numpy as np
import pytest

import morreylab as ml


def test_gamma_alpha_closed_forms():
    assert ml.gamma_alpha(0.5, 1) == pytest.approx(math.sqrt(2 * math.pi), rel=1e-10)
    assert ml.gamma_alpha(1.0, 2) == pytest.approx(2 * math.pi, rel=1e-10)


def test_grid_and_integration():
    g = ml.Grid([-1.0], [1.0], 512)
    f = ml.sample(g, lambda x: 1.0)
    assert ml.integrate(f, ml.Ball([0.0], 0.5)) == pytest.approx(1.0, abs=2 / 512)

    g2 = ml.Grid([-1.0, -1.0], [1.0, 1.0], 256)
    disc = ml.sample(g2, lambda x: 1.0)
    assert ml.integrate(disc, ml.Ball([0.0, 0.0], 1.0)) == pytest.approx(math.pi, rel=0.01)


def test_riesz_matches_oracle():
    g = ml.Grid([-4.0], [4.0], 2048)
    f = ml.sample(g, lambda x: 1.0 if abs(x[0]) < 1.0 else 0.0)
    u = ml.riesz_potential(f, 0.5)
    centers = np.asarray(g.centers())[:, 0]
    values = np.asarray(u.values)
    ga = ml.gamma_alpha(0.5, 1)
    i = int(np.argmin(np.abs(centers)))
    x = centers[i]
    oracle = ((1 + x) ** 0.5 + (1 - x) ** 0.5) / 0.5 / ga
    assert values[i] == pytest.approx(oracle, rel=1e-3)


def test_kernel_and_norms():
    k = ml.HomogeneousKernel.cos_harmonic(1)
    assert ml.sphere_norm(k, 2.0) == pytest.approx(math.sqrt(math.pi), rel=1e-9)
    assert ml.modulus_of_continuity(k, ml.inf, 0.1) == pytest.approx(0.1, rel=0.02)

    g = ml.Grid([-2.0], [2.0], 512)
    heav = ml.sample(g, lambda x: 1.0 if x[0] > 0 else 0.0)
    fam = ml.ball_family(g, 1 / 32, 2.0, 2.0, 8, True)
    assert ml.bmo_seminorm(heav, fam) == pytest.approx(0.5, abs=0.01)

    const = ml.sample(g, lambda x: 3.0)
    assert ml.bmo_seminorm(const, fam) == 0.0


def test_apq_membership():
    g = ml.Grid([-2.0], [2.0], 512)
    fam = ml.ball_family(g, 1 / 64, 64.0, 2.0, 64, True)
    ok = ml.apq_constant(ml.Weight.power(-0.25), 1.0, 2.0, fam, g)
    assert not ok["divergence_flag"]
    bad = ml.apq_constant(ml.Weight.power(-0.75), 1.0, 2.0, fam, g)
    assert bad["divergence_flag"]


def test_exponent_identities():
    rec = ml.exponent_identities(1.0, 2.0, 0.5, 1, ml.inf)
    assert rec["kappa"] == pytest.approx(0.5)
    assert ml.conjugate_exponent(2.0) == pytest.approx(2.0)
    assert math.isinf(ml.q_from(2.0, 0.5, 1))


def test_unboundedness_probe_small():
    cutoffs = [2.0 ** (-k) for k in range(4, 9)]
    rep = ml.unboundedness_probe(1, 0.1, cutoffs, resolution=2 ** 14)
    ratios = [s["ratio"] for s in rep["samples"]]
    assert all(b > a for a, b in zip(ratios, ratios[1:]))
