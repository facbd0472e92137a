import math

import numpy as np
import pytest

from _scenarios import closed_form_scene, demo_scenario, random_scenario
from circle_intercept import closed_form as cf
from circle_intercept.dubins import MODE_ORDER, PathMode, csc_path
from circle_intercept.exceptions import Infeasible, NoTransition
from circle_intercept.geometry import (
    TWO_PI,
    PlanarPose,
    TargetCircleSpec,
    TurnDirection,
    goal_pose_on_circle,
    wrap_angle,
    wrap_pi,
)

ORIGIN = PlanarPose(0.0, 0.0, 0.0)
DEMO = cf.EqualRadiusScene(-4.0, 3.0, 1.0)
# both transition angles exist here: the LSL centre vector sweeps across +x
TWO_TRANSITIONS = cf.EqualRadiusScene(8.0, 1.0, 1.0)


def _world(scene):
    return TargetCircleSpec((scene.cx, scene.cy), scene.rho, TurnDirection.RIGHT)


def _random_scene(rng):
    rho = rng.uniform(0.3, 2.0)
    d = rho + 4.0 * rho * rng.uniform(1.05, 3.0)
    b = rng.uniform(0, TWO_PI)
    return cf.EqualRadiusScene(d * math.cos(b), d * math.sin(b), rho)


def _scenes_with_sl(rng, count):
    found = []
    while len(found) < count:
        scene = _random_scene(rng)
        try:
            found.append((scene, cf.find_transition_angles(scene)))
        except NoTransition:
            continue
    return found


def test_four_rho_flag():
    assert not DEMO.four_rho_ok  # nearest circle point is exactly 4 rho away
    assert TWO_TRANSITIONS.four_rho_ok
    with pytest.raises(ValueError):
        cf.EqualRadiusScene(1.0, 1.0, 0.0)


def test_lsl_straight_ahead_is_pure_straight():
    seg = cf.lsl_segments(cf.EqualRadiusScene(10.0, -1.0, 1.0), math.pi / 2)
    assert seg == pytest.approx((10.0, 0.0, 0.0), abs=1e-15)


def test_lsl_hand_value_at_pi():
    seg = cf.lsl_segments(DEMO, math.pi)
    assert seg.straight == pytest.approx(math.sqrt(40.0), abs=1e-14)
    path = csc_path(ORIGIN, goal_pose_on_circle(_world(DEMO), math.pi), 1.0, PathMode.LSL)
    assert path.straight_len == pytest.approx(seg.straight, abs=1e-12)


def test_lsl_heading_bookkeeping(rng):
    for alpha in rng.uniform(0, TWO_PI, 100):
        seg = cf.lsl_segments(DEMO, alpha)
        assert abs(wrap_pi(seg.phi1 + math.pi / 2 + seg.phi2 - alpha)) < 1e-12


def test_lsr_straight_constant():
    seg = cf.lsr_segments(DEMO, np.linspace(0, TWO_PI, 100))
    np.testing.assert_allclose(seg.straight, 4.0, rtol=0, atol=1e-14)
    assert np.ptp(seg.phi1) == 0.0


def test_lsr_second_arc_slope():
    delta = 1e-4
    for alpha in (0.5, 2.0, 3.0, 5.5):
        diff = cf.lsr_segments(DEMO, alpha - delta).phi2 - cf.lsr_segments(DEMO, alpha).phi2
        assert diff == pytest.approx(delta, abs=1e-12)


def test_lsr_infeasible_inside_four_rho():
    with pytest.raises(Infeasible):
        cf.lsr_segments(cf.EqualRadiusScene(1.0, 1.0, 1.0), 0.3)
    assert np.all(np.isnan(cf.lsr_segments(cf.EqualRadiusScene(1.0, 1.0, 1.0), [0.1, 0.2]).straight))


def test_rsl_infeasible_when_centres_close():
    # RSL centre vector at alpha = 3 pi / 2 is (0, 0.5 - 2 + 1), length 0.5 < 2
    scene = cf.EqualRadiusScene(0.0, 0.5, 1.0)
    with pytest.raises(Infeasible):
        cf.rsl_segments(scene, 1.5 * math.pi)


@pytest.mark.parametrize("mode", MODE_ORDER, ids=lambda m: m.name)
def test_closed_forms_match_construction(rng, mode):
    fn = cf.SEGMENT_FUNCTIONS[mode]
    for _ in range(500):
        scene = _random_scene(rng)
        alpha = rng.uniform(0, TWO_PI)
        expected = csc_path(ORIGIN, goal_pose_on_circle(_world(scene), alpha), scene.rho, mode)
        seg = fn(scene, alpha)
        assert seg.straight == pytest.approx(expected.straight_len, abs=1e-9 * scene.rho)
        assert scene.rho * seg.phi1 == pytest.approx(scene.rho * expected.phi1, abs=1e-9 * scene.rho)
        assert scene.rho * seg.phi2 == pytest.approx(scene.rho * expected.phi2, abs=1e-9 * scene.rho)


def test_rsl_is_mirror_of_lsr(rng):
    # reflecting about the x-axis turns the clockwise target counter-clockwise
    for _ in range(200):
        scene = _random_scene(rng)
        alpha = rng.uniform(0, TWO_PI)
        mirror = TargetCircleSpec((scene.cx, -scene.cy), scene.rho, TurnDirection.LEFT)
        goal = goal_pose_on_circle(mirror, TWO_PI - alpha)
        lsr = csc_path(ORIGIN, goal, scene.rho, PathMode.LSR)
        rsl = cf.rsl_segments(scene, alpha)
        assert (rsl.straight, rsl.phi1, rsl.phi2) == pytest.approx(
            (lsr.straight_len, lsr.phi1, lsr.phi2), abs=1e-9
        )


def test_rsr_is_mirror_of_lsl(rng):
    for _ in range(200):
        scene = _random_scene(rng)
        alpha = rng.uniform(0, TWO_PI)
        mirror = TargetCircleSpec((scene.cx, -scene.cy), scene.rho, TurnDirection.LEFT)
        lsl = csc_path(ORIGIN, goal_pose_on_circle(mirror, TWO_PI - alpha), scene.rho, PathMode.LSL)
        rsr = cf.rsr_segments(scene, alpha)
        assert (rsr.straight, rsr.phi1, rsr.phi2) == pytest.approx(
            (lsl.straight_len, lsl.phi1, lsl.phi2), abs=1e-9
        )


def test_rsr_lower_bound():
    alphas = np.linspace(0, TWO_PI, 200)
    seg = cf.rsr_segments(DEMO, alphas)
    bound = math.hypot(DEMO.cx, DEMO.cy) - 2 * DEMO.rho
    assert np.all(seg.total(DEMO.rho) >= seg.straight)
    assert np.all(seg.straight >= bound)


def test_scene_from_world_requires_clockwise_equal_radius():
    sc = demo_scenario()
    scene, offset = cf.EqualRadiusScene.from_world(sc.pursuer, sc.circle, sc.rho)
    assert (scene.cx, scene.cy, offset) == (-4.0, 3.0, 0.0)
    with pytest.raises(ValueError):
        cf.EqualRadiusScene.from_world(sc.pursuer, sc.circle.mirrored(), sc.rho)
    with pytest.raises(ValueError):
        cf.EqualRadiusScene.from_world(sc.pursuer, sc.circle, 2.0)


def test_closed_form_scene_helper_matches_dubins(rng):
    from circle_intercept.dubins import mode_lengths

    for _ in range(20):
        sc = random_scenario(rng)
        scene, to_scene = closed_form_scene(sc)
        alphas = rng.uniform(0, TWO_PI, 50)
        direct = np.nanmin(mode_lengths(sc.pursuer, sc.circle, sc.rho, alphas), axis=0)
        np.testing.assert_allclose(cf.d_csc(scene, to_scene(alphas)), direct, atol=1e-9)


# -- transitions ---------------------------------------------------------------


def _assert_transition_invariants(scene, angles):
    a_ls, a_sl = angles
    assert cf.lsl_segments(scene, a_ls).phi2 <= 1e-9
    assert cf.lsr_segments(scene, a_ls).phi2 <= 1e-9
    assert cf.lsl_segments(scene, a_sl).phi1 <= 1e-9
    assert cf.rsl_segments(scene, a_sl).phi1 <= 1e-9


def test_transition_angles_fixed_scene():
    angles = cf.find_transition_angles(TWO_TRANSITIONS)
    _assert_transition_invariants(TWO_TRANSITIONS, angles)
    # the LSL centre vector (8 + 2 cos a, 2 sin a) leaves the +x axis downward at a = pi
    assert angles.alpha_sl == pytest.approx(math.pi, abs=1e-11)


def test_transition_lengths_agree(rng):
    for scene, (a_ls, a_sl) in _scenes_with_sl(rng, 30):
        rho = scene.rho
        _assert_transition_invariants(scene, (a_ls, a_sl))
        lsl, lsr = cf.lsl_segments(scene, a_ls), cf.lsr_segments(scene, a_ls)
        assert abs(lsl.total(rho) - lsr.total(rho)) <= 1e-6 * rho
        lsl, rsl = cf.lsl_segments(scene, a_sl), cf.rsl_segments(scene, a_sl)
        assert abs(lsl.total(rho) - rsl.total(rho)) <= 1e-6 * rho


def test_demo_scene_has_no_sl_transition():
    # LSL centre vector stays in x in [-6, -2]: it never crosses the +x axis
    with pytest.raises(NoTransition):
        cf.find_alpha_sl(DEMO)
    with pytest.raises(NoTransition):
        cf.find_transition_angles(DEMO)
    a_ls = cf.find_alpha_ls(DEMO)
    assert a_ls == pytest.approx(1.5 * math.pi, abs=1e-11)


def test_reference_scene_shape():
    """Qualitative: a scene whose SL transition is at 3.35 puts LS near 2.4."""
    scene = cf.EqualRadiusScene(3.0, 1.0 - 2.0 * math.sin(3.35), 1.0)
    a_ls, a_sl = cf.find_transition_angles(scene)
    assert a_sl == pytest.approx(3.35, abs=1e-9)
    assert a_ls == pytest.approx(2.4, abs=0.2)


def test_dominance_around_ls(rng):
    for scene, (a_ls, _) in _scenes_with_sl(rng, 10):
        offsets = np.linspace(1e-3, 0.05, 50)
        below = cf.mode_lengths(scene, a_ls - offsets)
        above = cf.mode_lengths(scene, a_ls + offsets)
        assert np.all(below[1] < below[0])  # LSR shorter before the transition
        assert np.all(above[1] > above[0])


@pytest.mark.parametrize("which", ["ls", "sl"])
def test_min_of_pair_continuous_at_transition(rng, which):
    h = 1e-4
    for scene, (a_ls, a_sl) in _scenes_with_sl(rng, 10):
        rho = scene.rho
        centre = a_ls if which == "ls" else a_sl
        grid = centre + h * (np.arange(-50, 51) + 0.5)
        lengths = cf.mode_lengths(scene, grid)
        other = 1 if which == "ls" else 2
        pair = np.minimum(lengths[0], lengths[other])
        straight = float(np.min(cf.lsl_segments(scene, grid).straight))
        assert np.max(np.abs(np.diff(pair))) <= 10 * h * (1 + 2 * rho / straight)
        assert np.max(np.abs(np.diff(lengths[0]))) >= math.pi * rho


# -- derivatives ---------------------------------------------------------------


def test_derivatives_match_finite_differences(rng):
    h = 1e-5
    checked = 0
    while checked < 300:
        scene = _random_scene(rng)
        alpha = rng.uniform(0, TWO_PI)
        try:
            f_prime, g_prime = cf.appendix_derivatives(scene, alpha)
        except Infeasible:
            continue
        f_fd = wrap_pi(cf.first_arc_angle(scene, alpha + h) - cf.first_arc_angle(scene, alpha - h)) / (2 * h)
        g_fd = wrap_pi(cf.rsl_first_arc_angle(scene, alpha + h) - cf.rsl_first_arc_angle(scene, alpha - h)) / (2 * h)
        assert f_prime == pytest.approx(f_fd, abs=1e-6)
        assert g_prime == pytest.approx(g_fd, abs=1e-6)
        checked += 1


def test_derivative_signs_at_sl(rng):
    for scene, (_, a_sl) in _scenes_with_sl(rng, 30):
        f_prime, g_prime = cf.appendix_derivatives(scene, a_sl)
        assert f_prime < 0.0
        assert g_prime > 0.0
        # at the transition the final heading lies in (0, pi)
        assert 0.0 < wrap_angle(a_sl - math.pi / 2) < math.pi
