import math
import random

import pytest

from markerkit.math3d import (
    DegenerateAxisError,
    Mat4,
    NonPositiveScaleError,
    SingularMatrixError,
    Vec3,
    inverse,
    multiply,
    rotate_pose,
    scale_pose,
    translate_pose,
    transpose,
)

from conftest import assert_mat_close, assert_vec_close, max_abs_diff, random_rigid_pose


def explicit_translation(tx, ty, tz) -> Mat4:
    # Built literally, independent of Mat4.translation.
    return Mat4((1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0, tx, ty, tz, 1))


def explicit_axis_angle(angle_deg, ux, uy, uz) -> Mat4:
    # Rodrigues formula written out in the test, column-major.
    a = math.radians(angle_deg)
    c, s, t = math.cos(a), math.sin(a), 1 - math.cos(a)
    return Mat4((
        t * ux * ux + c, t * ux * uy + s * uz, t * ux * uz - s * uy, 0,
        t * ux * uy - s * uz, t * uy * uy + c, t * uy * uz + s * ux, 0,
        t * ux * uz + s * uy, t * uy * uz - s * ux, t * uz * uz + c, 0,
        0, 0, 0, 1,
    ))


X = Vec3(1.0, 0.0, 0.0)


class TestMultiply:
    def test_identity_absorbs(self):
        m = random_rigid_pose(random.Random(1))
        assert_mat_close(multiply(Mat4.identity(), m), m, 0.0)
        assert_mat_close(multiply(m, Mat4.identity()), m, 0.0)

    def test_translation_composition(self):
        product = multiply(Mat4.translation(1, 2, 3), Mat4.translation(4, 5, 6))
        assert_mat_close(product, explicit_translation(5, 7, 9), 0.0)

    def test_rotation_composition(self):
        double = multiply(Mat4.rotation(90, X), Mat4.rotation(90, X))
        # R(180, X) evaluated by hand: diag(1, -1, -1).
        expected = Mat4((1, 0, 0, 0, 0, -1, 0, 0, 0, 0, -1, 0, 0, 0, 0, 1))
        assert_mat_close(double, expected, 1e-9)


class TestInverse:
    def test_identity(self):
        assert_mat_close(inverse(Mat4.identity()), Mat4.identity(), 0.0)

    def test_rotation_inverse_is_transpose(self):
        r = Mat4.rotation(71.25, Vec3(0.3, -0.5, 0.81))
        assert_mat_close(inverse(r), transpose(r), 1e-9)

    def test_translation_inverse(self):
        assert_mat_close(inverse(Mat4.translation(1, 2, 3)),
                         explicit_translation(-1, -2, -3), 1e-12)

    def test_singular_raises(self):
        with pytest.raises(SingularMatrixError):
            inverse(Mat4((0,) * 16))

    def test_roundtrip_over_random_rigid_poses(self, rng):
        worst = 0.0
        for _ in range(1000):
            m = random_rigid_pose(rng)
            worst = max(worst, max_abs_diff(multiply(m, inverse(m)), Mat4.identity()))
        assert worst <= 1e-7


class TestTranspose:
    def test_identity(self):
        assert_mat_close(transpose(Mat4.identity()), Mat4.identity(), 0.0)

    def test_involution(self, rng):
        for _ in range(50):
            m = random_rigid_pose(rng)
            assert_mat_close(transpose(transpose(m)), m, 0.0)

    def test_moves_translation_to_opposite_slots(self):
        # Transposing swaps the translation triple (indices 12..14 in
        # column-major layout) with the bottom-row slots 3, 7, 11 -- the
        # row-vector layout some engines print.
        t = transpose(Mat4.translation(7, 8, 9))
        assert (t.m[3], t.m[7], t.m[11]) == (7, 8, 9)
        assert (t.m[12], t.m[13], t.m[14]) == (0, 0, 0)


class TestPoseHelpers:
    def test_translate_pose_identity_base(self):
        assert_mat_close(translate_pose(Mat4.identity(), 1, 2, 3),
                         explicit_translation(1, 2, 3), 0.0)

    def test_translate_pose_zero_is_noop(self, rng):
        m = random_rigid_pose(rng)
        assert_mat_close(translate_pose(m, 0, 0, 0), m, 0.0)

    def test_translate_pose_is_local_frame(self):
        # A rotated pose moved along its local z ends up at (0, -5, 0).
        m = translate_pose(Mat4.rotation(90, X), 0, 0, 5)
        assert_vec_close(m.transform_point(Vec3(0, 0, 0)), Vec3(0, -5, 0), 1e-9)
        assert_mat_close(m, multiply(Mat4.rotation(90, X), explicit_translation(0, 0, 5)), 0.0)

    def test_rotate_pose_zero_and_full_turn(self):
        assert_mat_close(rotate_pose(Mat4.identity(), 0, X), Mat4.identity(), 1e-15)
        assert_mat_close(rotate_pose(Mat4.identity(), 360, Vec3(0.2, 0.5, -0.9)),
                         Mat4.identity(), 1e-9)

    def test_rotate_pose_maps_y_to_z(self):
        m = rotate_pose(Mat4.identity(), 90, X)
        assert_vec_close(m.transform_direction(Vec3(0, 1, 0)), Vec3(0, 0, 1), 1e-9)

    def test_rotate_pose_degenerate_axis(self):
        with pytest.raises(DegenerateAxisError):
            rotate_pose(Mat4.identity(), 45, Vec3(0, 0, 0))

    def test_scale_pose_one_is_noop(self, rng):
        m = random_rigid_pose(rng)
        assert_mat_close(scale_pose(m, 1.0), m, 0.0)

    def test_scale_pose_doubles_basis(self):
        m = scale_pose(Mat4.identity(), 2.0)
        assert_vec_close(m.transform_direction(Vec3(1, 0, 0)), Vec3(2, 0, 0), 0.0)
        assert_vec_close(m.transform_direction(Vec3(0, 0, 1)), Vec3(0, 0, 2), 0.0)

    def test_scale_pose_keeps_translation(self):
        m = scale_pose(Mat4.translation(1, 0, 0), 2.0)
        assert_mat_close(m, multiply(Mat4.translation(1, 0, 0), Mat4.scaling(2.0)), 0.0)
        assert_vec_close(m.translation_vec, Vec3(1, 0, 0), 0.0)

    def test_scale_pose_rejects_non_positive(self):
        with pytest.raises(NonPositiveScaleError):
            scale_pose(Mat4.identity(), 0.0)
        with pytest.raises(NonPositiveScaleError):
            scale_pose(Mat4.identity(), -2.0)

    def test_helpers_match_explicit_products(self, rng):
        for _ in range(100):
            m = random_rigid_pose(rng)
            tx, ty, tz = (rng.uniform(-10, 10) for _ in range(3))
            assert_mat_close(translate_pose(m, tx, ty, tz),
                             multiply(m, explicit_translation(tx, ty, tz)), 1e-9)
            angle = rng.uniform(-360, 360)
            axis = Vec3(rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(0.1, 1))
            u = axis.normalize()
            assert_mat_close(rotate_pose(m, angle, axis),
                             multiply(m, explicit_axis_angle(angle, u.x, u.y, u.z)), 1e-9)
            s = rng.uniform(0.1, 5.0)
            explicit_scale = Mat4((s, 0, 0, 0, 0, s, 0, 0, 0, 0, s, 0, 0, 0, 0, 1))
            assert_mat_close(scale_pose(m, s), multiply(m, explicit_scale), 1e-9)


class TestVec3:
    def test_normalize_unit_length(self, rng):
        for _ in range(100):
            v = Vec3(rng.uniform(-9, 9), rng.uniform(-9, 9), rng.uniform(-9, 9))
            if v.length() < 1e-12:
                continue
            assert abs(v.normalize().length() - 1.0) <= 1e-9

    def test_normalize_rejects_tiny(self):
        with pytest.raises(DegenerateAxisError):
            Vec3(0, 1e-13, 0).normalize()

    def test_rigid_pose_invariant(self, rng):
        for _ in range(100):
            assert random_rigid_pose(rng).is_rigid(1e-6)
        assert not Mat4.scaling(2.0).is_rigid(1e-6)
