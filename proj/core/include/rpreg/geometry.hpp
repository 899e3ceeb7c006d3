#pragma once

#include <Eigen/Core>

#include <array>

namespace rpreg {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

/// Coordinate axis selecting one residual projection (one rotation row).
enum class Axis : int { X = 0, Y = 1, Z = 2 };

inline constexpr std::array<Axis, 3> kAllAxes{Axis::X, Axis::Y, Axis::Z};

inline int axis_index(Axis a) { return static_cast<int>(a); }

const char* axis_name(Axis a);

struct RigidTransform {
  Mat3 rotation = Mat3::Identity();
  Vec3 translation = Vec3::Zero();
};

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kHalfPi = kPi / 2.0;

/// Maps a point of the radius-pi/2 disk to the upper unit hemisphere (r3 >= 0),
/// r = [sin(g) * d/|d|, cos(g)] with g = min(|d|, pi/2). The origin maps to
/// (0,0,1); points outside the disk (corners of the circumscribed square) are
/// clamped radially to the disk boundary.
Vec3 exp_map_pos(const Vec2& d);

/// Lower-hemisphere counterpart: the exact negation of exp_map_pos.
Vec3 exp_map_neg(const Vec2& d);

/// Angle in [0, pi] between two nonzero vectors. Throws std::invalid_argument
/// on a zero-norm input.
double angle_between(const Vec3& a, const Vec3& b);

/// Angular radius sqrt(2)*half_side of the hemisphere patch covered by a
/// square disk cell of the given half side.
double branch_angular_radius(double half_side);

inline Vec3 apply_transform(const RigidTransform& T, const Vec3& p) {
  return T.rotation * p + T.translation;
}

/// Orthogonal-Procrustes projection of a nonsingular 3x3 matrix onto SO(3):
/// the polar factor with the determinant corrected to +1. Throws
/// std::invalid_argument when the input is singular.
Mat3 nearest_rotation(const Mat3& rows);

bool is_rotation(const Mat3& R, double tol = 1e-9);

/// Geodesic rotation distance acos((tr(Rgt^T Rest) - 1) / 2), in degrees.
double rotation_error_deg(const Mat3& R_gt, const Mat3& R_est);

double translation_error(const Vec3& t_gt, const Vec3& t_est);

}  // namespace rpreg
