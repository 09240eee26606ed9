import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from frenet_kit import dsl, engine, oracles
from frenet_kit.errors import NonOrthonormalInitialFrame, StepUnderflow, ZeroVelocity

from curves import CIRCLE2, HELIX, WORKED


def spec(text):
    return dsl.parse_curve(text)


# -- arclength ------------------------------------------------------------------

def test_arclength_of_a_line_is_exact():
    table = oracles.arclength_table(spec("[t, 0]"), 0.0, np.linspace(0, 1, 11))
    np.testing.assert_allclose(table.s, np.linspace(0, 1, 11), atol=1e-15)


def test_arclength_of_unit_circle_is_t():
    g = np.linspace(-2, 3, 21)
    table = oracles.arclength_table(spec("[cos(t), sin(t)]"), 0.0, g)
    np.testing.assert_allclose(table.s, g, atol=1e-12)


def test_arclength_of_parabola_closed_form():
    table = oracles.arclength_table(spec("[t, t^2]"), 0.0, np.linspace(0, 1, 5))
    want = (2 * math.sqrt(5) + math.asinh(2)) / 4
    assert table.s[-1] == pytest.approx(want, rel=1e-12)


def test_arclength_inversion():
    s_ = spec("[t, t^2]")
    table = oracles.arclength_table(s_, -1.0, np.linspace(-1, 1, 9))
    for t in np.linspace(-1, 1, 17):
        assert table.t_of(table.s_of(t)) == pytest.approx(t, abs=1e-12)


def test_arclength_rejects_bad_grids():
    with pytest.raises(ValueError):
        oracles.arclength_table(spec(HELIX), 0.0, [0.0, 0.0])
    with pytest.raises(ZeroVelocity):
        oracles.arclength_table(spec("[t^2, t^3]"), 0.0, [-1.0, 0.0, 1.0])


def test_arclength_canonical_matrix_is_unit_speed():
    for text in (WORKED, HELIX, "[t, t^2, exp(t)]"):
        cm = oracles.arclength_canonical_matrix(spec(text), 0.3)
        assert np.linalg.norm(cm.a[:, 0]) == pytest.approx(1.0, abs=1e-13)
        # |g''| along arclength is the curvature
        k1 = engine.curvatures_minor(engine.canonical_matrix(spec(text), 0.3)).kappas[0]
        assert np.linalg.norm(cm.a[:, 1]) == pytest.approx(abs(k1), rel=1e-10)


# -- definitional curvatures --------------------------------------------------------

def test_definitional_worked_example():
    got = oracles.definitional_curvatures(spec(WORKED), 0.0)
    assert got == pytest.approx((2.0, 3.0, 4.0), rel=1e-4)


def test_definitional_helix_and_circle():
    for t in (-1.0, 0.0, 2.5):
        assert oracles.definitional_curvatures(spec(HELIX), t) == pytest.approx(
            (0.5, 0.5), rel=1e-5)
        k, = oracles.definitional_curvatures(spec(CIRCLE2), t)
        assert k == pytest.approx(0.5, rel=1e-5)


def test_definitional_steps_away_from_the_domain_edge():
    s_ = spec("[log(t), t, t^2]")
    got = oracles.definitional_curvatures(s_, 1e-3)
    want = engine.curvatures_minor(engine.canonical_matrix(s_, 1e-3)).kappas
    assert got == pytest.approx(want, rel=1e-4)


def test_definitional_step_underflow():
    with pytest.raises(StepUnderflow):
        oracles.definitional_curvatures(spec(HELIX), 0.0, h=1e-3, min_step=1e-2)


# -- Frenet-Serret reconstruction ------------------------------------------------------

def test_unit_circle_closes():
    rec = oracles.serret_reconstruct(oracles.SerretSystem.constant([1.0]),
                                     (0.0, 2 * math.pi), np.eye(2), np.array([1.0, 0.0]))
    assert np.linalg.norm(rec.points[-1] - rec.points[0]) <= 1e-6
    np.testing.assert_allclose(rec.frames[-1], np.eye(2), atol=1e-6)
    assert rec.max_drift <= 1e-8


def test_helix_from_constant_curvatures():
    # unit-speed helix: radius 1, pitch 1/(2 pi), with k = tau = 1/2
    s_ = spec(HELIX)
    f0 = engine.frenet_frame(engine.canonical_matrix(s_, 0.0)).matrix
    rec = oracles.serret_reconstruct(oracles.SerretSystem.constant([0.5, 0.5]),
                                     (0.0, 2.0), f0, np.array([1.0, 0.0, 0.0]))
    r2 = math.sqrt(2.0)
    for s, p in zip(rec.s[::256], rec.points[::256]):
        t = s / r2
        np.testing.assert_allclose(p, [math.cos(t), math.sin(t), t], atol=1e-9)


def test_vanishing_last_curvature_keeps_last_vector():
    rng = np.random.default_rng(4)
    q, _ = np.linalg.qr(rng.normal(size=(4, 4)))
    q[:, 0] *= np.sign(np.linalg.det(q))
    system = oracles.SerretSystem(4, lambda s: np.array([1 + 0.3 * math.sin(s),
                                                         0.7, 0.0]))
    rec = oracles.serret_reconstruct(system, (0.0, 5.0), q, np.zeros(4))
    assert np.max(np.abs(rec.frames[:, :, 3] - q[:, 3])) <= 1e-8


def test_rejects_bad_initial_frame():
    with pytest.raises(NonOrthonormalInitialFrame):
        oracles.serret_reconstruct(oracles.SerretSystem.constant([1.0]), (0, 1),
                                   np.array([[1.0, 0.0], [0.0, 2.0]]), np.zeros(2))
    with pytest.raises(NonOrthonormalInitialFrame):
        oracles.serret_reconstruct(oracles.SerretSystem.constant([1.0]), (0, 1),
                                   np.diag([1.0, -1.0]), np.zeros(2))
    with pytest.raises(ValueError):
        oracles.serret_reconstruct(oracles.SerretSystem.constant([1.0]), (0, 1),
                                   np.eye(3), np.zeros(3))


@settings(max_examples=25, deadline=None)
@given(st.lists(st.floats(-3, 3), min_size=1, max_size=4), st.floats(0.5, 4.0))
def test_reconstructed_frames_stay_orthonormal(kappas, length):
    n = len(kappas) + 1
    rec = oracles.serret_reconstruct(oracles.SerretSystem.constant(kappas),
                                     (0.0, length), np.eye(n), np.zeros(n), step=0.01)
    assert rec.max_drift <= 1e-8
    # unit speed: consecutive points are one step apart along a curve
    gaps = np.linalg.norm(np.diff(rec.points, axis=0), axis=1)
    assert np.all(gaps <= (rec.s[1] - rec.s[0]) * (1 + 1e-12))


# -- round trip ----------------------------------------------------------------------

def test_roundtrip_worked_example():
    rep = oracles.roundtrip_check(spec(WORKED), np.linspace(-0.5, 0.5, 5))
    assert rep.max_kappa_discrepancy <= 1e-4
    assert rep.max_frame_drift <= 1e-8


def test_roundtrip_helix():
    rep = oracles.roundtrip_check(spec(HELIX), np.linspace(0, 2 * math.pi, 7))
    assert rep.max_kappa_discrepancy <= 1e-5
    assert rep.max_position_error <= 1e-5


def test_roundtrip_circle():
    rep = oracles.roundtrip_check(spec("[cos(t), sin(t)]"), np.linspace(0, 2 * math.pi, 9))
    assert rep.max_kappa_discrepancy <= 1e-6
    assert rep.max_position_error <= 1e-6


# -- R diagonals -------------------------------------------------------------------------

def test_r_diagonal_report_shape():
    rep = oracles.r_diagonal_check(spec(HELIX), 0.0, 1.0, samples=5)
    assert rep.r_diagonals.shape == (5, 3)
    np.testing.assert_allclose(rep.kappa_products[:, 1:], [[0.5, 0.25]] * 5, rtol=1e-14)
    assert rep.max_r11_error <= 1e-12
