#include "rpreg/geometry.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rpreg {

const char* axis_name(Axis a) {
  switch (a) {
    case Axis::X: return "X";
    case Axis::Y: return "Y";
    default: return "Z";
  }
}

Vec3 exp_map_pos(const Vec2& d) {
  const double norm = d.norm();
  if (norm == 0.0) {
    return Vec3(0.0, 0.0, 1.0);
  }
  const double gamma = std::min(norm, kHalfPi);
  const double s = std::sin(gamma);
  const Vec2 dir = d / norm;
  return Vec3(s * dir.x(), s * dir.y(), std::cos(gamma));
}

Vec3 exp_map_neg(const Vec2& d) { return -exp_map_pos(d); }

double angle_between(const Vec3& a, const Vec3& b) {
  const double na = a.norm();
  const double nb = b.norm();
  if (na == 0.0 || nb == 0.0) {
    throw std::invalid_argument("angle_between: zero-norm input");
  }
  const double c = std::clamp(a.dot(b) / (na * nb), -1.0, 1.0);
  return std::acos(c);
}

double branch_angular_radius(double half_side) {
  return std::sqrt(2.0) * half_side;
}

Mat3 nearest_rotation(const Mat3& rows) {
  Eigen::JacobiSVD<Mat3> svd(rows, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Vec3& sv = svd.singularValues();
  if (sv(2) <= 1e-12 * std::max(1.0, sv(0))) {
    throw std::invalid_argument("nearest_rotation: singular row matrix");
  }
  Mat3 R = svd.matrixU() * svd.matrixV().transpose();
  if (R.determinant() < 0.0) {
    R = svd.matrixU() * Vec3(1.0, 1.0, -1.0).asDiagonal() *
        svd.matrixV().transpose();
  }
  return R;
}

bool is_rotation(const Mat3& R, double tol) {
  const double orth = (R * R.transpose() - Mat3::Identity()).cwiseAbs().maxCoeff();
  return orth <= tol && std::abs(R.determinant() - 1.0) <= tol;
}

double rotation_error_deg(const Mat3& R_gt, const Mat3& R_est) {
  const double tr = (R_gt.transpose() * R_est).trace();
  const double arg = std::clamp((tr - 1.0) / 2.0, -1.0, 1.0);
  return std::acos(arg) * 180.0 / kPi;
}

double translation_error(const Vec3& t_gt, const Vec3& t_est) {
  return (t_gt - t_est).norm();
}

}  // namespace rpreg
