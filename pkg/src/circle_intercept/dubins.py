"""Circle-straight-circle (CSC) Dubins paths onto a tangent pose of a circle."""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import NamedTuple, Sequence

import numpy as np

from .exceptions import AllModesInfeasible, Infeasible
from .geometry import (
    TANGENT_CLAMP,
    PlanarPose,
    Point,
    RigidTransform,
    TargetCircleSpec,
    TurnDirection,
    goal_pose_on_circle,
    tangent_segment,
    turn_center,
    wrap_angle,
    wrap_angles,
)

L, R = TurnDirection.LEFT, TurnDirection.RIGHT


class PathMode(Enum):
    LSL = (L, L)
    LSR = (L, R)
    RSL = (R, L)
    RSR = (R, R)

    @property
    def first_turn(self) -> TurnDirection:
        return self.value[0]

    @property
    def last_turn(self) -> TurnDirection:
        return self.value[1]

    @property
    def mirror(self) -> PathMode:
        return PathMode((self.first_turn.mirror, self.last_turn.mirror))

    @classmethod
    def from_name(cls, name: str) -> PathMode:
        return cls[name.upper()]


# Fixed order; also the tie-breaking order when modes have equal length.
MODE_ORDER: tuple[PathMode, ...] = (PathMode.LSL, PathMode.LSR, PathMode.RSL, PathMode.RSR)


def _sweep(h_from: float, h_to: float, direction: TurnDirection) -> float:
    return wrap_angle(direction.sign * (h_to - h_from))


def _advance_arc(pose: PlanarPose, direction: TurnDirection, angle: float, radius: float):
    # position = center + s*radius*(sin h, -cos h), center fixed during the turn
    s = direction.sign
    cx = pose.x - s * radius * math.sin(pose.heading)
    cy = pose.y + s * radius * math.cos(pose.heading)
    h = pose.heading + s * angle
    return cx + s * radius * math.sin(h), cy - s * radius * math.cos(h), h


@dataclass(frozen=True)
class CscPath:
    """One CSC path: turn ``phi1``, go straight ``straight_len``, turn ``phi2``."""

    mode: PathMode
    phi1: float
    straight_len: float
    phi2: float
    turn_radius: float
    first_center: Point
    second_center: Point
    start: PlanarPose

    @property
    def total_len(self) -> float:
        return self.turn_radius * self.phi1 + self.straight_len + self.turn_radius * self.phi2

    @property
    def segment_lengths(self) -> tuple[float, float, float]:
        return (self.turn_radius * self.phi1, self.straight_len, self.turn_radius * self.phi2)

    def pose_at(self, s: float) -> PlanarPose:
        """Pose after travelling arc length ``s`` (clipped to the path)."""
        a1, ls, a2 = self.segment_lengths
        s = min(max(s, 0.0), a1 + ls + a2)
        rho = self.turn_radius
        x, y, h = _advance_arc(self.start, self.mode.first_turn, min(s, a1) / rho, rho)
        if s <= a1:
            return PlanarPose(x, y, h)
        d = min(s - a1, ls)
        x, y = x + d * math.cos(h), y + d * math.sin(h)
        if s <= a1 + ls:
            return PlanarPose(x, y, h)
        x, y, h = _advance_arc(PlanarPose(x, y, h), self.mode.last_turn, (s - a1 - ls) / rho, rho)
        return PlanarPose(x, y, h)

    @property
    def end_pose(self) -> PlanarPose:
        return self.pose_at(self.total_len)

    def sample(self, n: int) -> np.ndarray:
        """``n`` arc-length-uniform samples as rows ``(s, x, y, heading)``."""
        if n < 2:
            raise ValueError("need at least two samples")
        total = self.total_len
        out = np.empty((n, 4))
        for i in range(n):
            s = total * i / (n - 1)
            p = self.pose_at(s)
            out[i] = (s, p.x, p.y, p.heading)
        return out

    def transformed(self, tf: RigidTransform) -> CscPath:
        return CscPath(
            mode=self.mode,
            phi1=self.phi1,
            straight_len=self.straight_len,
            phi2=self.phi2,
            turn_radius=self.turn_radius,
            first_center=tf.apply_point(self.first_center),
            second_center=tf.apply_point(self.second_center),
            start=tf.apply_pose(self.start),
        )


def csc_path(start: PlanarPose, goal: PlanarPose, rho: float, mode: PathMode) -> CscPath:
    """Build the ``mode`` CSC path from ``start`` to ``goal`` with turn radius ``rho``.

    Raises:
        Infeasible: ``mode`` needs an inner tangent that does not exist.
    """
    c1 = turn_center(start, mode.first_turn, rho)
    c2 = turn_center(goal, mode.last_turn, rho)
    if mode.first_turn is mode.last_turn and c1 == c2:
        # goal lies on the first turn circle: a single arc does it
        heading, straight = start.heading, 0.0
    else:
        seg = tangent_segment(c1, mode.first_turn, c2, mode.last_turn, rho)
        heading, straight = seg.heading, seg.length
    return CscPath(
        mode=mode,
        phi1=_sweep(start.heading, heading, mode.first_turn),
        straight_len=straight,
        phi2=_sweep(heading, goal.heading, mode.last_turn),
        turn_radius=float(rho),
        first_center=c1,
        second_center=c2,
        start=start,
    )


class DubinsDistance(NamedTuple):
    length: float
    mode: PathMode
    path: CscPath


def d_csc(
    start: PlanarPose,
    circle: TargetCircleSpec,
    rho: float,
    alpha: float,
    modes: Sequence[PathMode] = MODE_ORDER,
) -> DubinsDistance:
    """Shortest CSC path from ``start`` to the circle's tangent pose at ``alpha``.

    ``alpha`` may be any real number; it is taken modulo ``2*pi``.  Ties go to
    the mode listed first in ``modes``.
    """
    goal = goal_pose_on_circle(circle, alpha)
    best = None
    for mode in modes:
        try:
            path = csc_path(start, goal, rho, mode)
        except Infeasible:
            continue
        if best is None or path.total_len < best.total_len:
            best = path
    if best is None:
        raise AllModesInfeasible(
            f"no CSC path reaches alpha={wrap_angle(alpha)!r} with rho={rho!r}"
        )
    return DubinsDistance(best.total_len, best.mode, best)


def mode_lengths(
    start: PlanarPose, circle: TargetCircleSpec, rho: float, alphas
) -> np.ndarray:
    """Lengths of all four modes over an array of angular positions.

    Returns an array of shape ``(4, len(alphas))`` with rows in
    :data:`MODE_ORDER`; infeasible entries are NaN.  Same construction as
    :func:`csc_path`, vectorised for grid scans.
    """
    a = wrap_angles(np.asarray(alphas, dtype=float))
    cx, cy = circle.center
    px = cx + circle.radius * np.cos(a)
    py = cy + circle.radius * np.sin(a)
    theta = a + circle.motion.sign * (math.pi / 2)
    out = np.empty((4, a.size))
    for row, mode in enumerate(MODE_ORDER):
        s1, s2 = mode.first_turn.sign, mode.last_turn.sign
        c1x, c1y = turn_center(start, mode.first_turn, rho)
        dx = px - s2 * rho * np.sin(theta) - c1x
        dy = py + s2 * rho * np.cos(theta) - c1y
        dist = np.hypot(dx, dy)
        base = np.arctan2(dy, dx)
        if s1 == s2:
            heading = np.where(dist == 0.0, start.heading, base)
            straight = dist
        else:
            disc = dist * dist - 4.0 * rho * rho
            feasible = disc >= -TANGENT_CLAMP
            straight = np.sqrt(np.maximum(disc, 0.0))
            heading = base + s1 * np.arctan2(2.0 * rho, straight)
            straight = np.where(feasible, straight, np.nan)
        phi1 = wrap_angles(s1 * (heading - start.heading))
        phi2 = wrap_angles(s2 * (theta - heading))
        out[row] = rho * phi1 + straight + rho * phi2
    return out


def d_csc_grid(start: PlanarPose, circle: TargetCircleSpec, rho: float, alphas):
    """Vectorised :func:`d_csc` lengths.

    Returns ``(lengths, mode_index)`` where ``mode_index`` indexes
    :data:`MODE_ORDER`; positions where every mode is infeasible get NaN and -1.
    """
    lengths = mode_lengths(start, circle, rho, alphas)
    finite = np.isfinite(lengths)
    any_ok = finite.any(axis=0)
    idx = np.argmin(np.where(finite, lengths, np.inf), axis=0)
    best = np.where(any_ok, lengths[idx, np.arange(lengths.shape[1])], np.nan)
    return best, np.where(any_ok, idx, -1)
