"""Marker orientation: where is the camera around the marker, in quadrants.

The camera position is recovered in marker space from the pose matrix,
projected into the marker plane, and turned into a 0..360 degree angle.
That angle is quantized to four quadrants which drive the remapping of
screen-space drag directions, so "drag right" keeps moving the model
toward the viewer's right no matter which side of the marker they stand
on.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import IntEnum

from .math3d import Mat4, Vec3, inverse, transpose

PROJECTION_EPS = 1e-9


class OutOfRangeError(ValueError):
    """Angle outside the [0, 360) domain."""


class OrientationQuadrant(IntEnum):
    DEG0 = 0
    DEG90 = 90
    DEG180 = 180
    DEG270 = 270

    @property
    def angle_deg(self) -> float:
        return float(self.value)


@dataclass
class OrientationState:
    """Remembers the last well-defined orientation.

    When the camera sits on the marker normal the planar projection
    vanishes and no angle is defined; the previous one is reused so a
    pass directly over the marker never flips the drag mapping.
    """

    last_angle_deg: float | None = None
    last_quadrant: OrientationQuadrant = OrientationQuadrant.DEG0


def camera_position_object_space(pose: Mat4) -> Vec3:
    """Camera position in the marker/object frame.

    Computed by inverting the object-to-camera pose and transposing it;
    the position triple is then read from the transposed inverse (its
    bottom row in this library's column-major layout). For a rigid pose
    with rotation R and translation t this equals -R^T t.

    Raises SingularMatrixError for non-invertible poses.
    """
    n = transpose(inverse(pose))
    return Vec3(n.at(3, 0), n.at(3, 1), n.at(3, 2))


def marker_orientation_deg(pose: Mat4, state: OrientationState | None = None) -> float:
    """Orientation angle of the marker relative to the camera, in [0, 360).

    The camera position p is projected onto the marker X/Y plane and
    normalized to v. With s = v . (0,1,0), the magnitude is
    w = acos(s) in degrees; the sign comes from the z-component of
    v x (0,1,0) (which is v.x), non-negative meaning +. The result is
    180 + sign*w, wrapped into [0, 360).

    If the planar projection of p is shorter than 1e-9 the angle is
    undefined: the state's last angle is returned (0.0 when none), and
    the state is left untouched. Otherwise the state is updated.
    """
    p = camera_position_object_space(pose)
    norm = math.hypot(p.x, p.y)
    if norm < PROJECTION_EPS:
        if state is not None and state.last_angle_deg is not None:
            return state.last_angle_deg
        return 0.0

    vx, vy = p.x / norm, p.y / norm
    s = max(-1.0, min(1.0, vy))
    w = math.degrees(math.acos(s))
    sign = 1.0 if vx >= 0.0 else -1.0
    angle = (180.0 + sign * w) % 360.0

    if state is not None:
        state.last_angle_deg = angle
        state.last_quadrant = quantize_orientation(angle)
    return angle


def quantize_orientation(angle_deg: float) -> OrientationQuadrant:
    """Nearest of the four quadrant orientations.

    Brackets are left-open/right-closed: [0,45] and (315,360) map to
    DEG0, (45,135] to DEG90, (135,225] to DEG180, (225,315] to DEG270.

    Raises OutOfRangeError outside [0, 360).
    """
    if not 0.0 <= angle_deg < 360.0:
        raise OutOfRangeError(f"angle must be in [0, 360), got {angle_deg}")
    if angle_deg <= 45.0 or angle_deg > 315.0:
        return OrientationQuadrant.DEG0
    if angle_deg <= 135.0:
        return OrientationQuadrant.DEG90
    if angle_deg <= 225.0:
        return OrientationQuadrant.DEG180
    return OrientationQuadrant.DEG270


def remap_translation(user_delta: Vec3, quadrant: OrientationQuadrant) -> Vec3:
    """Reorient a user translation so screen directions stay consistent.

    The y component (height above the marker) always passes through
    unchanged. The in-plane components are rotated per quadrant:
    DEG0 identity, DEG180 negates both, DEG90/DEG270 swap the axes with
    one sign flip each (a plain inversion cannot keep a sideways drag
    screen-consistent at 90/270; the swap does).
    """
    x, y, z = user_delta.x, user_delta.y, user_delta.z
    if quadrant is OrientationQuadrant.DEG0:
        return Vec3(x, y, z)
    if quadrant is OrientationQuadrant.DEG90:
        return Vec3(z, y, -x)
    if quadrant is OrientationQuadrant.DEG180:
        return Vec3(-x, y, -z)
    return Vec3(-z, y, x)
