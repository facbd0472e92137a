"""Closed-form CSC segments for equal pursuer and target-circle radii.

Everything here works in the canonical frame: pursuer at the origin with
heading 0, target moving clockwise on a circle of radius ``rho`` centred at
``(cx, cy)``.  The goal heading at angular position ``alpha`` is
``alpha - pi/2``, which makes the pursuer's final right turn circle coincide
with the target circle, so the LSR and RSR paths have constant straight
segments.

These formulas are an independent route to the quantities produced by
:mod:`circle_intercept.dubins` and are used to cross-check it, to locate
mode-transition angles and to evaluate the analytic derivatives of the
first-arc angles.

All segment functions accept a scalar or an array for ``alpha``.  Scalar
calls raise :class:`~circle_intercept.exceptions.Infeasible` when the inner
tangent does not exist; array calls return NaN in those positions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
from scipy import optimize

from .dubins import MODE_ORDER, PathMode
from .exceptions import Infeasible, NoTransition
from .geometry import (
    TANGENT_CLAMP,
    PlanarPose,
    TargetCircleSpec,
    TurnDirection,
    canonicalize,
    wrap_angles,
    wrap_pi,
)

HALF_PI = 0.5 * math.pi


@dataclass(frozen=True)
class EqualRadiusScene:
    cx: float
    cy: float
    rho: float

    def __post_init__(self):
        if not self.rho > 0:
            raise ValueError(f"rho must be positive, got {self.rho}")

    @property
    def four_rho_ok(self) -> bool:
        """Every point of the target circle is more than ``4*rho`` from the origin."""
        return abs(math.hypot(self.cx, self.cy) - self.rho) > 4.0 * self.rho

    @classmethod
    def from_world(
        cls, start: PlanarPose, circle: TargetCircleSpec, rho: float
    ) -> tuple[EqualRadiusScene, float]:
        """Canonical scene for a clockwise target with ``circle.radius == rho``.

        Also returns the offset to add to a world angular position to get the
        canonical one.
        """
        if circle.motion is not TurnDirection.RIGHT:
            raise ValueError("closed forms assume a clockwise target; mirror the scene first")
        if not math.isclose(circle.radius, rho, rel_tol=1e-12):
            raise ValueError("closed forms assume circle radius equal to rho")
        tf, canon = canonicalize(start, circle)
        return cls(canon.center[0], canon.center[1], rho), tf.rotation


class Segments(NamedTuple):
    straight: float | np.ndarray
    phi1: float | np.ndarray
    phi2: float | np.ndarray

    def total(self, rho: float):
        return rho * self.phi1 + self.straight + rho * self.phi2


def _scalar_or_array(values, alpha, what):
    if np.ndim(alpha) == 0:
        if not np.isfinite(values[0]):
            raise Infeasible(f"{what} inner tangent does not exist at alpha={float(alpha)!r}")
        return Segments(*(float(v) for v in values))
    return Segments(*values)


def _inner_straight(dist_sq, rho):
    disc = dist_sq - 4.0 * rho * rho
    return np.where(disc >= -TANGENT_CLAMP, np.sqrt(np.maximum(disc, 0.0)), np.nan)


def _lsl_vector(scene, alpha):
    """Vector between the LSL turn centers."""
    return (
        scene.cx + 2.0 * scene.rho * np.cos(alpha),
        scene.cy + 2.0 * scene.rho * np.sin(alpha) - scene.rho,
    )


def _rsl_vector(scene, alpha):
    return (
        scene.cx + 2.0 * scene.rho * np.cos(alpha),
        scene.cy + 2.0 * scene.rho * np.sin(alpha) + scene.rho,
    )


def lsl_segments(scene: EqualRadiusScene, alpha) -> Segments:
    x, y = _lsl_vector(scene, alpha)
    straight = np.hypot(x, y)
    phi1 = wrap_angles(np.arctan2(y, x))
    phi2 = wrap_angles(alpha - phi1 - HALF_PI)
    return _scalar_or_array((straight, phi1, phi2), alpha, "LSL")


def lsr_segments(scene: EqualRadiusScene, alpha) -> Segments:
    rho = scene.rho
    alpha = np.asarray(alpha, dtype=float)
    straight = _inner_straight(scene.cx**2 + (scene.cy - rho) ** 2, rho)
    psi1 = np.arctan2(2.0 * rho, straight)
    psi2 = np.arctan2(scene.cy - rho, scene.cx)
    phi1 = wrap_angles(psi1 + psi2)
    phi2 = wrap_angles(phi1 - alpha + HALF_PI)
    shape = np.shape(alpha)
    return _scalar_or_array(
        (np.broadcast_to(straight, shape), np.broadcast_to(phi1, shape), phi2), alpha, "LSR"
    )


def rsl_segments(scene: EqualRadiusScene, alpha) -> Segments:
    rho = scene.rho
    x, y = _rsl_vector(scene, alpha)
    dist = np.hypot(x, y)
    straight = _inner_straight(dist * dist, rho)
    psi1 = np.arctan2(y, x)
    psi2 = np.arcsin(np.minimum(2.0 * rho / dist, 1.0))
    phi1 = wrap_angles(-psi1 + psi2)
    # second arc closes the heading from the line (psi1 - psi2) to alpha - pi/2
    phi2 = wrap_angles(alpha - HALF_PI - psi1 + psi2)
    phi2 = np.where(np.isfinite(straight), phi2, np.nan)
    return _scalar_or_array((straight, phi1, phi2), alpha, "RSL")


def rsr_segments(scene: EqualRadiusScene, alpha) -> Segments:
    # final right circle is the target circle itself, as for LSR
    rho = scene.rho
    alpha = np.asarray(alpha, dtype=float)
    x, y = scene.cx, scene.cy + rho
    heading = math.atan2(y, x)
    shape = np.shape(alpha)
    straight = np.broadcast_to(math.hypot(x, y), shape)
    phi1 = np.broadcast_to(wrap_angles(-heading), shape)
    phi2 = wrap_angles(heading - alpha + HALF_PI)
    return _scalar_or_array((straight, phi1, phi2), alpha, "RSR")


SEGMENT_FUNCTIONS = {
    PathMode.LSL: lsl_segments,
    PathMode.LSR: lsr_segments,
    PathMode.RSL: rsl_segments,
    PathMode.RSR: rsr_segments,
}


def mode_lengths(scene: EqualRadiusScene, alphas) -> np.ndarray:
    """``(4, n)`` array of mode lengths in :data:`MODE_ORDER`, NaN if infeasible."""
    alphas = np.atleast_1d(np.asarray(alphas, dtype=float))
    return np.stack([SEGMENT_FUNCTIONS[m](scene, alphas).total(scene.rho) for m in MODE_ORDER])


def d_csc(scene: EqualRadiusScene, alphas) -> np.ndarray:
    """Minimum over the four modes; NaN where all are infeasible."""
    lengths = mode_lengths(scene, alphas)
    finite = np.isfinite(lengths)
    best = np.min(np.where(finite, lengths, np.inf), axis=0)
    return np.where(finite.any(axis=0), best, np.nan)


# -- transition angles -------------------------------------------------------


class TransitionAngles(NamedTuple):
    alpha_ls: float
    alpha_sl: float


def first_arc_angle(scene: EqualRadiusScene, alpha):
    """Unwrapped first-arc angle of the LSL path (an ``arctan2`` value)."""
    x, y = _lsl_vector(scene, alpha)
    return np.arctan2(y, x)


def rsl_first_arc_angle(scene: EqualRadiusScene, alpha):
    """Unwrapped first-arc angle of the RSL path, ``-psi1 + psi2``."""
    x, y = _rsl_vector(scene, alpha)
    dist = np.hypot(x, y)
    return -np.arctan2(y, x) + np.arcsin(np.minimum(2.0 * scene.rho / dist, 1.0))


def _lsl_second_arc_signed(scene, alpha):
    # LSL second arc in [-pi, pi): crosses zero upward where the arc vanishes
    return wrap_pi(alpha - first_arc_angle(scene, alpha) - HALF_PI)


def _find_zero_crossing(fn, grid_size, xtol, name, direction):
    # direction +1: first upward crossing of fn, -1: first downward crossing
    grid = np.linspace(0.0, 2.0 * math.pi, grid_size + 1)
    vals = fn(grid)
    lo, hi = vals[:-1], vals[1:]
    # stay clear of the +-pi branch cut of the signed angle
    near = (np.abs(lo) < HALF_PI) & (np.abs(hi) < HALF_PI)
    if direction > 0:
        hits = np.flatnonzero(near & (lo < 0.0) & (hi >= 0.0))
    else:
        hits = np.flatnonzero(near & (lo > 0.0) & (hi <= 0.0))
    if hits.size == 0:
        raise NoTransition(f"no {name} transition on [0, 2*pi)")
    k = hits[0]
    a, b = grid[k], grid[k + 1]
    if fn(np.array(b)) == 0.0:
        return float(b)
    return optimize.bisect(lambda t: float(fn(np.array(t))), a, b, xtol=xtol, maxiter=200)


def find_alpha_ls(scene: EqualRadiusScene, xtol: float = 1e-12) -> float:
    """Angle where the second arc of the LSL and LSR paths vanishes."""
    return _find_zero_crossing(
        lambda a: _lsl_second_arc_signed(scene, a), 2048, xtol, "LS", direction=1
    )


def find_alpha_sl(scene: EqualRadiusScene, xtol: float = 1e-12) -> float:
    """Angle where the first arc of the LSL and RSL paths vanishes.

    Of the (zero or two) angles where the LSL first arc vanishes, this is the
    one where the first-arc angle is decreasing.
    """
    return _find_zero_crossing(
        lambda a: first_arc_angle(scene, a), 2048, xtol, "SL", direction=-1
    )


def find_transition_angles(scene: EqualRadiusScene, xtol: float = 1e-12) -> TransitionAngles:
    """Both transition angles; raises :class:`NoTransition` if either is absent."""
    return TransitionAngles(find_alpha_ls(scene, xtol), find_alpha_sl(scene, xtol))


# -- derivatives ----------------------------------------------------------------


def appendix_derivatives(scene: EqualRadiusScene, alpha: float) -> tuple[float, float]:
    """Analytic derivatives of the LSL and RSL first-arc angles w.r.t. ``alpha``.

    Returns ``(f_prime, g_prime)`` with ``f = first_arc_angle`` and
    ``g = rsl_first_arc_angle``.
    """
    rho = scene.rho
    lsl = lsl_segments(scene, alpha)
    theta = alpha - HALF_PI
    f_prime = -(2.0 * rho / lsl.straight) * math.sin(theta - lsl.phi1)

    x, y = _rsl_vector(scene, alpha)
    dist = math.hypot(x, y)
    if dist < 2.0 * rho:
        raise Infeasible(f"RSL inner tangent does not exist at alpha={alpha!r}")
    psi2 = math.asin(2.0 * rho / dist)
    phi2 = rsl_segments(scene, alpha).phi2
    g_prime = math.tan(psi2) * math.sin(phi2)
    return f_prime, g_prime
