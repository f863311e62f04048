"""Geodesic flow: conserved quantities, event detection, angle laws."""

import numpy as np
import pytest

from revgeo.dynamics import (INNER_EQUATOR, OUTER_EQUATOR, TURNING_POINT,
                             GeodesicState, IntegratorConfig, conserved,
                             geodesic_rhs, initial_state_from_angle, integrate)
from revgeo.potential import turning_point

TIGHT = IntegratorConfig(rel_tol=1e-12, abs_tol=1e-13, max_lambda=100.0,
                         method="DOP853")


def _cfg(lam, method="DOP853"):
    return IntegratorConfig(rel_tol=1e-12, abs_tol=1e-13, max_lambda=lam,
                            method=method)


def test_initial_state(ring):
    st = initial_state_from_angle(ring, 0.3)
    assert st.r == 0.0 and st.theta == 0.0
    assert st.vr == pytest.approx(np.cos(0.3), abs=1e-15)
    assert st.vtheta == pytest.approx(np.sin(0.3) / 3.0, abs=1e-15)
    c = conserved(ring, st)
    assert c.E == pytest.approx(0.5, abs=1e-14)          # unit speed
    assert c.ell == pytest.approx(3.0 * np.sin(0.3), abs=1e-14)
    assert c.clairaut == pytest.approx(c.ell, abs=1e-14)


def test_rhs_matches_christoffel(ring):
    st = GeodesicState(r=0.7, theta=0.2, vr=0.4, vtheta=0.11)
    d = geodesic_rhs(ring, st)
    R = ring.R(0.7)
    Rp = ring.Rprime(0.7)
    assert d[0] == st.vr
    assert d[1] == st.vtheta
    assert d[2] == pytest.approx(R * Rp * st.vtheta ** 2, rel=1e-14)
    assert d[3] == pytest.approx(-2.0 * Rp / R * st.vr * st.vtheta, rel=1e-14)


def test_meridian_runs_the_profile_circle(ring):
    st = initial_state_from_angle(ring, 0.0)
    tr = integrate(ring, st, _cfg(2.0 * np.pi * ring.b))
    end = tr.state_at(2.0 * np.pi * ring.b)
    assert end.r == pytest.approx(2.0 * np.pi, abs=1e-9)
    assert end.theta == pytest.approx(0.0, abs=1e-12)


def test_outer_equator_stays_put(ring):
    st = initial_state_from_angle(ring, np.pi / 2.0)
    tr = integrate(ring, st, _cfg(10.0))
    lam = np.linspace(0.0, 10.0, 50)
    assert np.max(np.abs(tr.dense(lam)[0])) < 1e-10


def test_drift_reported_small(ring):
    st = initial_state_from_angle(ring, 0.47)
    tr = integrate(ring, st, _cfg(200.0))
    assert tr.e_drift < 1e-10
    assert tr.ell_drift < 1e-10


def test_turning_events_match_quadrature_turning_point(ring):
    beta0 = 0.5
    tp = turning_point(ring, beta0)
    st = initial_state_from_angle(ring, beta0)
    tr = integrate(ring, st, _cfg(40.0))
    turns = tr.events_of(TURNING_POINT)
    assert len(turns) >= 2
    for ev in turns:
        assert abs(abs(ev.state.r) / ring.b - tp.chi_max) < 1e-9
        assert abs(ev.state.vr) < 1e-10


def test_event_lambda_located_precisely(ring):
    # bisection on the dense output pins events to ~1e-12 in lambda
    st = initial_state_from_angle(ring, 0.2)
    tr = integrate(ring, st, _cfg(60.0))
    for ev in tr.events_of(INNER_EQUATOR):
        r_at = float(tr.dense(ev.lam)[0])
        assert abs(np.mod(r_at, 2.0 * np.pi * ring.b) - np.pi * ring.b) < 1e-9


def test_seven_loop_trace_crosses_inner_equator_seven_times(ring):
    # launch angle 0.119 from the outer equator: the near-closed unbound
    # geodesic threads the hole once per loop, seven loops per circuit
    st = initial_state_from_angle(ring, 0.119)
    tr = integrate(ring, st, _cfg(45.2))
    inner = tr.events_of(INNER_EQUATOR)
    assert len(inner) == 7


def test_crossing_angle_law_at_inner_equator(ring):
    # R(0) sin(beta0) = R(b pi) sin(beta) at every inner-equator passage
    beta0 = 0.119
    st = initial_state_from_angle(ring, beta0)
    tr = integrate(ring, st, _cfg(100.0))
    R0, Rin = ring.R(0.0), ring.R(np.pi * ring.b)
    inner = tr.events_of(INNER_EQUATOR)
    assert inner
    for ev in inner:
        sin_beta = ring.R(ev.state.r) * ev.state.vtheta   # unit speed
        assert abs(R0 * np.sin(beta0) - Rin * sin_beta) < 1e-8


def test_return_angle_law_at_outer_equator(ring):
    beta0 = 0.47
    st = initial_state_from_angle(ring, beta0)
    tr = integrate(ring, st, _cfg(120.0))
    outer = tr.events_of(OUTER_EQUATOR)
    assert len(outer) >= 3
    for ev in outer:
        sinb = ring.R(ev.state.r) * ev.state.vtheta
        # angle or its supplement: sine agrees either way
        assert abs(sinb - np.sin(beta0)) < 1e-8


def test_conservation_random_sample(ring, horn, spindle, rng):
    # short version of the acceptance sweep: E, ell, R sin(beta) all hold
    for spec in (ring, horn, spindle):
        for _ in range(4):
            beta = float(rng.uniform(0.05, 1.5))
            st = initial_state_from_angle(spec, beta)
            tr = integrate(spec, st, _cfg(150.0))
            c0 = conserved(spec, st)
            lam = np.linspace(0.0, 150.0, 300)
            Y = tr.dense(lam)
            R = spec.R(Y[0])
            E = 0.5 * (Y[2] ** 2 + R ** 2 * Y[3] ** 2)
            ell = R ** 2 * Y[3]
            assert np.max(np.abs(E - c0.E)) < 1e-9
            assert np.max(np.abs(ell - c0.ell)) < 1e-9


def test_unit_speed_parametrization(ring):
    st = initial_state_from_angle(ring, 0.33)
    tr = integrate(ring, st, _cfg(30.0))
    lam = np.linspace(0.0, 30.0, 121)
    Y = tr.dense(lam)
    speed = np.sqrt(Y[2] ** 2 + ring.R(Y[0]) ** 2 * Y[3] ** 2)
    assert np.allclose(speed, 1.0, atol=1e-10)
