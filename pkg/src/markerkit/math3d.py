"""3-vectors and 4x4 matrices for the pose pipeline.

Matrices are stored as 16 floats in column-major order (OpenGL layout):
element (row, col) lives at index col * 4 + row, so a pose matrix keeps
its translation in indices 12..14. Matrices act on column vectors,
``p_camera = M @ p_object``. Angles at the API boundary are degrees.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

DET_EPS = 1e-12
AXIS_EPS = 1e-12


class SingularMatrixError(ValueError):
    """Matrix determinant is (numerically) zero; no inverse exists."""


class DegenerateAxisError(ValueError):
    """Rotation axis is too short to define a direction."""


class NonPositiveScaleError(ValueError):
    """Uniform scale factors must be > 0."""


@dataclass(frozen=True, slots=True)
class Vec3:
    """Immutable 3-component vector (point, direction, or translation)."""

    x: float = 0.0
    y: float = 0.0
    z: float = 0.0

    def __add__(self, other: Vec3) -> Vec3:
        return Vec3(self.x + other.x, self.y + other.y, self.z + other.z)

    def __sub__(self, other: Vec3) -> Vec3:
        return Vec3(self.x - other.x, self.y - other.y, self.z - other.z)

    def __mul__(self, s: float) -> Vec3:
        return Vec3(self.x * s, self.y * s, self.z * s)

    __rmul__ = __mul__

    def __neg__(self) -> Vec3:
        return Vec3(-self.x, -self.y, -self.z)

    def __iter__(self):
        yield self.x
        yield self.y
        yield self.z

    def dot(self, other: Vec3) -> float:
        return self.x * other.x + self.y * other.y + self.z * other.z

    def cross(self, other: Vec3) -> Vec3:
        return Vec3(
            self.y * other.z - self.z * other.y,
            self.z * other.x - self.x * other.z,
            self.x * other.y - self.y * other.x,
        )

    def length(self) -> float:
        return math.sqrt(self.dot(self))

    def normalize(self) -> Vec3:
        """Unit vector in this direction.

        Raises DegenerateAxisError when the length is below 1e-12; a
        direction cannot be recovered from (numerical) zero.
        """
        n = self.length()
        if n < AXIS_EPS:
            raise DegenerateAxisError(f"cannot normalize near-zero vector {self}")
        return Vec3(self.x / n, self.y / n, self.z / n)


class Mat4:
    """4x4 matrix over 16 column-major floats."""

    __slots__ = ("m",)

    def __init__(self, values):
        m = tuple(float(v) for v in values)
        if len(m) != 16:
            raise ValueError(f"Mat4 needs 16 scalars, got {len(m)}")
        self.m = m

    @classmethod
    def identity(cls) -> Mat4:
        return cls((1.0, 0.0, 0.0, 0.0,
                    0.0, 1.0, 0.0, 0.0,
                    0.0, 0.0, 1.0, 0.0,
                    0.0, 0.0, 0.0, 1.0))

    @classmethod
    def translation(cls, tx: float, ty: float, tz: float) -> Mat4:
        return cls((1.0, 0.0, 0.0, 0.0,
                    0.0, 1.0, 0.0, 0.0,
                    0.0, 0.0, 1.0, 0.0,
                    tx, ty, tz, 1.0))

    @classmethod
    def rotation(cls, angle_deg: float, axis: Vec3) -> Mat4:
        """Axis-angle rotation (right-handed, angle in degrees)."""
        u = axis.normalize()
        a = math.radians(angle_deg)
        c, s = math.cos(a), math.sin(a)
        t = 1.0 - c
        x, y, z = u.x, u.y, u.z
        return cls((t * x * x + c, t * x * y + s * z, t * x * z - s * y, 0.0,
                    t * x * y - s * z, t * y * y + c, t * y * z + s * x, 0.0,
                    t * x * z + s * y, t * y * z - s * x, t * z * z + c, 0.0,
                    0.0, 0.0, 0.0, 1.0))

    @classmethod
    def scaling(cls, s: float) -> Mat4:
        if s <= 0.0:
            raise NonPositiveScaleError(f"scale must be > 0, got {s}")
        return cls((s, 0.0, 0.0, 0.0,
                    0.0, s, 0.0, 0.0,
                    0.0, 0.0, s, 0.0,
                    0.0, 0.0, 0.0, 1.0))

    def at(self, row: int, col: int) -> float:
        return self.m[col * 4 + row]

    @property
    def translation_vec(self) -> Vec3:
        return Vec3(self.m[12], self.m[13], self.m[14])

    def __matmul__(self, other: Mat4) -> Mat4:
        a, b = self.m, other.m
        out = [0.0] * 16
        for col in range(4):
            for row in range(4):
                out[col * 4 + row] = (a[row] * b[col * 4]
                                      + a[4 + row] * b[col * 4 + 1]
                                      + a[8 + row] * b[col * 4 + 2]
                                      + a[12 + row] * b[col * 4 + 3])
        return Mat4(out)

    def transform_point(self, p: Vec3) -> Vec3:
        m = self.m
        w = m[3] * p.x + m[7] * p.y + m[11] * p.z + m[15]
        return Vec3(
            (m[0] * p.x + m[4] * p.y + m[8] * p.z + m[12]) / w,
            (m[1] * p.x + m[5] * p.y + m[9] * p.z + m[13]) / w,
            (m[2] * p.x + m[6] * p.y + m[10] * p.z + m[14]) / w,
        )

    def transform_direction(self, d: Vec3) -> Vec3:
        m = self.m
        return Vec3(
            m[0] * d.x + m[4] * d.y + m[8] * d.z,
            m[1] * d.x + m[5] * d.y + m[9] * d.z,
            m[2] * d.x + m[6] * d.y + m[10] * d.z,
        )

    def determinant(self) -> float:
        m = self.m
        # 2x2 sub-determinants of the top two and bottom two rows.
        s0 = m[0] * m[5] - m[1] * m[4]
        s1 = m[0] * m[9] - m[1] * m[8]
        s2 = m[0] * m[13] - m[1] * m[12]
        s3 = m[4] * m[9] - m[5] * m[8]
        s4 = m[4] * m[13] - m[5] * m[12]
        s5 = m[8] * m[13] - m[9] * m[12]
        c5 = m[10] * m[15] - m[11] * m[14]
        c4 = m[6] * m[15] - m[7] * m[14]
        c3 = m[6] * m[11] - m[7] * m[10]
        c2 = m[2] * m[15] - m[3] * m[14]
        c1 = m[2] * m[11] - m[3] * m[10]
        c0 = m[2] * m[7] - m[3] * m[6]
        return s0 * c5 - s1 * c4 + s2 * c3 + s3 * c2 - s4 * c1 + s5 * c0

    def is_rigid(self, tol: float = 1e-6) -> bool:
        """True when the upper-left 3x3 is orthonormal with determinant +1."""
        cols = [Vec3(self.m[c * 4], self.m[c * 4 + 1], self.m[c * 4 + 2]) for c in range(3)]
        for i in range(3):
            if abs(cols[i].dot(cols[i]) - 1.0) > tol:
                return False
            for j in range(i + 1, 3):
                if abs(cols[i].dot(cols[j])) > tol:
                    return False
        det3 = cols[0].dot(cols[1].cross(cols[2]))
        return abs(det3 - 1.0) <= tol


def multiply(a: Mat4, b: Mat4) -> Mat4:
    """Matrix product a . b (column-major, column-vector convention)."""
    return a @ b


def transpose(m: Mat4) -> Mat4:
    v = m.m
    return Mat4((v[0], v[4], v[8], v[12],
                 v[1], v[5], v[9], v[13],
                 v[2], v[6], v[10], v[14],
                 v[3], v[7], v[11], v[15]))


def inverse(m: Mat4) -> Mat4:
    """General 4x4 inverse by cofactor expansion.

    Raises SingularMatrixError when |det| <= 1e-12.
    """
    v = m.m
    s0 = v[0] * v[5] - v[1] * v[4]
    s1 = v[0] * v[9] - v[1] * v[8]
    s2 = v[0] * v[13] - v[1] * v[12]
    s3 = v[4] * v[9] - v[5] * v[8]
    s4 = v[4] * v[13] - v[5] * v[12]
    s5 = v[8] * v[13] - v[9] * v[12]
    c5 = v[10] * v[15] - v[11] * v[14]
    c4 = v[6] * v[15] - v[7] * v[14]
    c3 = v[6] * v[11] - v[7] * v[10]
    c2 = v[2] * v[15] - v[3] * v[14]
    c1 = v[2] * v[11] - v[3] * v[10]
    c0 = v[2] * v[7] - v[3] * v[6]

    det = s0 * c5 - s1 * c4 + s2 * c3 + s3 * c2 - s4 * c1 + s5 * c0
    if abs(det) <= DET_EPS:
        raise SingularMatrixError(f"matrix is singular (det={det})")
    r = 1.0 / det

    return Mat4((
        (v[5] * c5 - v[9] * c4 + v[13] * c3) * r,
        (-v[1] * c5 + v[9] * c2 - v[13] * c1) * r,
        (v[1] * c4 - v[5] * c2 + v[13] * c0) * r,
        (-v[1] * c3 + v[5] * c1 - v[9] * c0) * r,
        (-v[4] * c5 + v[8] * c4 - v[12] * c3) * r,
        (v[0] * c5 - v[8] * c2 + v[12] * c1) * r,
        (-v[0] * c4 + v[4] * c2 - v[12] * c0) * r,
        (v[0] * c3 - v[4] * c1 + v[8] * c0) * r,
        (v[7] * s5 - v[11] * s4 + v[15] * s3) * r,
        (-v[3] * s5 + v[11] * s2 - v[15] * s1) * r,
        (v[3] * s4 - v[7] * s2 + v[15] * s0) * r,
        (-v[3] * s3 + v[7] * s1 - v[11] * s0) * r,
        (-v[6] * s5 + v[10] * s4 - v[14] * s3) * r,
        (v[2] * s5 - v[10] * s2 + v[14] * s1) * r,
        (-v[2] * s4 + v[6] * s2 - v[14] * s0) * r,
        (v[2] * s3 - v[6] * s1 + v[10] * s0) * r,
    ))


def translate_pose(m: Mat4, tx: float, ty: float, tz: float) -> Mat4:
    """Right-multiply by a translation: the offset lives in m's local frame."""
    return m @ Mat4.translation(tx, ty, tz)


def rotate_pose(m: Mat4, angle_deg: float, axis: Vec3) -> Mat4:
    """Right-multiply by an axis-angle rotation (degrees)."""
    return m @ Mat4.rotation(angle_deg, axis)


def scale_pose(m: Mat4, s: float) -> Mat4:
    """Right-multiply by a uniform scale; s must be > 0."""
    return m @ Mat4.scaling(s)
