"""Planar poses, turn circles, rigid transforms and common tangents.

Angles are radians.  Headings are measured counter-clockwise from the
positive x-axis and are always stored in ``[0, 2*pi)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import NamedTuple

import numpy as np

from .exceptions import Infeasible

TWO_PI = 2.0 * math.pi

# Wrapped angles this close below 2*pi are returned as 0 so that a vanished
# arc is never reported as a full loop.
ANGLE_SNAP = 1e-10

# Inner-tangent discriminants in (-TANGENT_CLAMP, 0) are treated as grazing.
TANGENT_CLAMP = 1e-12

Point = tuple[float, float]


def wrap_angle(x: float) -> float:
    """Map ``x`` into ``[0, 2*pi)``."""
    r = x % TWO_PI
    if r >= TWO_PI - ANGLE_SNAP:
        return 0.0
    return r


def wrap_angles(x):
    """Vectorised :func:`wrap_angle`."""
    r = np.mod(x, TWO_PI)
    return np.where(r >= TWO_PI - ANGLE_SNAP, 0.0, r)


def wrap_pi(x):
    """Map ``x`` into ``[-pi, pi)``; works on scalars and arrays."""
    return (x + math.pi) % TWO_PI - math.pi


class TurnDirection(Enum):
    """Sense of rotation: LEFT is counter-clockwise, RIGHT is clockwise."""

    LEFT = 1
    RIGHT = -1

    @property
    def sign(self) -> int:
        return self.value

    @property
    def mirror(self) -> TurnDirection:
        return TurnDirection.RIGHT if self is TurnDirection.LEFT else TurnDirection.LEFT

    @property
    def letter(self) -> str:
        return "L" if self is TurnDirection.LEFT else "R"


@dataclass(frozen=True)
class PlanarPose:
    x: float
    y: float
    heading: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "x", float(self.x))
        object.__setattr__(self, "y", float(self.y))
        object.__setattr__(self, "heading", wrap_angle(float(self.heading)))

    @property
    def position(self) -> Point:
        return (self.x, self.y)

    def mirrored(self) -> PlanarPose:
        """Reflection about the x-axis."""
        return PlanarPose(self.x, -self.y, -self.heading)


@dataclass(frozen=True)
class TargetCircleSpec:
    """A target moving at constant speed on a circle.

    ``motion`` is the target's sense of travel (RIGHT for clockwise).
    ``alpha_init`` is its starting angular position, measured
    counter-clockwise from the x-axis at the circle center.
    """

    center: Point
    radius: float
    motion: TurnDirection = TurnDirection.RIGHT
    alpha_init: float = 0.0
    speed: float = 1.0

    def __post_init__(self):
        cx, cy = self.center
        object.__setattr__(self, "center", (float(cx), float(cy)))
        if not self.radius > 0:
            raise ValueError(f"circle radius must be positive, got {self.radius}")
        if not self.speed > 0:
            raise ValueError(f"target speed must be positive, got {self.speed}")
        object.__setattr__(self, "alpha_init", wrap_angle(float(self.alpha_init)))

    def point_at(self, alpha: float) -> Point:
        cx, cy = self.center
        return (cx + self.radius * math.cos(alpha), cy + self.radius * math.sin(alpha))

    def mirrored(self) -> TargetCircleSpec:
        """Reflection about the x-axis (reverses the sense of motion)."""
        return TargetCircleSpec(
            center=(self.center[0], -self.center[1]),
            radius=self.radius,
            motion=self.motion.mirror,
            alpha_init=-self.alpha_init,
            speed=self.speed,
        )


def goal_pose_on_circle(circle: TargetCircleSpec, alpha: float) -> PlanarPose:
    """Pose on the circle at angular position ``alpha``, tangent to the motion."""
    alpha = wrap_angle(alpha)
    x, y = circle.point_at(alpha)
    return PlanarPose(x, y, alpha + circle.motion.sign * (math.pi / 2))


@dataclass(frozen=True)
class RigidTransform:
    """``p -> R(rotation) @ p + translation``."""

    rotation: float = 0.0
    translation: Point = (0.0, 0.0)

    def apply_point(self, p: Point) -> Point:
        c, s = math.cos(self.rotation), math.sin(self.rotation)
        return (
            c * p[0] - s * p[1] + self.translation[0],
            s * p[0] + c * p[1] + self.translation[1],
        )

    def apply_pose(self, pose: PlanarPose) -> PlanarPose:
        x, y = self.apply_point(pose.position)
        return PlanarPose(x, y, pose.heading + self.rotation)

    def apply_circle(self, circle: TargetCircleSpec) -> TargetCircleSpec:
        return TargetCircleSpec(
            center=self.apply_point(circle.center),
            radius=circle.radius,
            motion=circle.motion,
            alpha_init=circle.alpha_init + self.rotation,
            speed=circle.speed,
        )

    def inverse(self) -> RigidTransform:
        c, s = math.cos(self.rotation), math.sin(self.rotation)
        tx, ty = self.translation
        return RigidTransform(-self.rotation, (-(c * tx + s * ty), -(-s * tx + c * ty)))


def canonicalize(
    start: PlanarPose, circle: TargetCircleSpec
) -> tuple[RigidTransform, TargetCircleSpec]:
    """Return the transform taking ``start`` to the origin with heading 0.

    The second element is ``circle`` expressed in that canonical frame.
    """
    rot = -start.heading
    c, s = math.cos(rot), math.sin(rot)
    tf = RigidTransform(rot, (-(c * start.x - s * start.y), -(s * start.x + c * start.y)))
    return tf, tf.apply_circle(circle)


def turn_center(pose: PlanarPose, direction: TurnDirection, radius: float) -> Point:
    """Center of the turning circle tangent to ``pose`` on the given side."""
    if not radius > 0:
        raise ValueError(f"turn radius must be positive, got {radius}")
    k = direction.sign * radius
    return (pose.x - k * math.sin(pose.heading), pose.y + k * math.cos(pose.heading))


class TangentSegment(NamedTuple):
    departure: Point
    arrival: Point
    heading: float
    length: float


def tangent_segment(
    c1: Point, d1: TurnDirection, c2: Point, d2: TurnDirection, radius: float
) -> TangentSegment:
    """Directed common tangent leaving circle ``c1`` and joining circle ``c2``.

    Both circles have the same ``radius``.  The vehicle circulates circle
    ``c1`` in sense ``d1`` and circle ``c2`` in sense ``d2``; equal senses
    give the outer tangent, opposite senses the inner one.

    Raises:
        Infeasible: inner tangent requested with centers closer than
            ``2 * radius``.
    """
    dx, dy = c2[0] - c1[0], c2[1] - c1[1]
    dist = math.hypot(dx, dy)
    base = math.atan2(dy, dx)
    if d1 is d2:
        if dist == 0.0:
            raise ValueError("turn circles share a center; tangent direction undefined")
        heading, length = base, dist
    else:
        disc = dist * dist - 4.0 * radius * radius
        if disc < 0.0:
            if disc < -TANGENT_CLAMP:
                raise Infeasible(
                    f"inner tangent needs center distance >= {2 * radius}, got {dist}"
                )
            disc = 0.0
        length = math.sqrt(disc)
        heading = base + d1.sign * math.atan2(2.0 * radius, length)
    # left normal of the line; each tangent point sits opposite its circle's side
    nx, ny = -math.sin(heading), math.cos(heading)
    k1, k2 = d1.sign * radius, d2.sign * radius
    departure = (c1[0] - k1 * nx, c1[1] - k1 * ny)
    arrival = (c2[0] - k2 * nx, c2[1] - k2 * ny)
    return TangentSegment(departure, arrival, wrap_angle(heading), length)
