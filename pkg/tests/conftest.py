import math
import random

import pytest

from markerkit.math3d import Mat4, Vec3


def random_rigid_pose(rng: random.Random) -> Mat4:
    """Random rotation (uniform axis, uniform angle) with random translation."""
    z = rng.uniform(-1.0, 1.0)
    theta = rng.uniform(0.0, 2.0 * math.pi)
    r = math.sqrt(max(0.0, 1.0 - z * z))
    axis = Vec3(r * math.cos(theta), r * math.sin(theta), z)
    angle = rng.uniform(0.0, 360.0)
    rotation = Mat4.rotation(angle, axis)
    t = [rng.uniform(-50.0, 50.0) for _ in range(3)]
    return Mat4.translation(*t) @ rotation


def max_abs_diff(a: Mat4, b: Mat4) -> float:
    return max(abs(x - y) for x, y in zip(a.m, b.m))


def assert_mat_close(a: Mat4, b: Mat4, tol: float = 1e-9):
    assert max_abs_diff(a, b) <= tol, f"matrices differ by {max_abs_diff(a, b)}\n{a.m}\n{b.m}"


def assert_vec_close(a: Vec3, b: Vec3, tol: float = 1e-9):
    diff = max(abs(a.x - b.x), abs(a.y - b.y), abs(a.z - b.z))
    assert diff <= tol, f"vectors differ by {diff}: {a} vs {b}"


@pytest.fixture
def rng():
    return random.Random(20120214)
