#include "rpreg/axis_solver.hpp"

#include "bnb_driver.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rpreg {

std::array<Branch, 4> subdivide(const Branch& branch) {
  const double h = branch.half_side / 2.0;
  std::array<Branch, 4> children;
  int k = 0;
  for (double sx : {-1.0, 1.0}) {
    for (double sy : {-1.0, 1.0}) {
      children[k].center = branch.center + Vec2(sx * h, sy * h);
      children[k].half_side = h;
      ++k;
    }
  }
  return children;
}

namespace {

// Cosine bracket of row . p over the patch: theta within +-alpha of the
// center angle, clamped to [0, pi]. cos_hi >= cos_lo.
inline void cos_bracket(double theta, double alpha, double& cos_lo, double& cos_hi) {
  cos_hi = std::cos(std::max(theta - alpha, 0.0));
  cos_lo = std::cos(std::min(theta + alpha, kPi));
}

inline Interval pos_interval(double norm, double cos_lo, double cos_hi, double q_j,
                             double epsilon) {
  const double lo = -epsilon - norm * cos_hi + q_j;
  double hi = epsilon - norm * cos_lo + q_j;
  if (hi < lo) hi = lo;  // guard against cos rounding at alpha == 0
  return {lo, hi};
}

inline Interval neg_interval(double norm, double cos_lo, double cos_hi, double q_j,
                             double epsilon) {
  const double lo = -epsilon + norm * cos_lo + q_j;
  double hi = epsilon + norm * cos_hi + q_j;
  if (hi < lo) hi = lo;
  return {lo, hi};
}

}  // namespace

Interval candidate_interval_pos(const Vec3& p, double q_j, const Vec3& center_row,
                                double half_side, double epsilon) {
  const double norm = p.norm();
  if (norm == 0.0) {
    return {q_j - epsilon, q_j + epsilon};
  }
  const double theta = angle_between(center_row, p);
  double cos_lo = 0.0, cos_hi = 0.0;
  cos_bracket(theta, branch_angular_radius(half_side), cos_lo, cos_hi);
  return pos_interval(norm, cos_lo, cos_hi, q_j, epsilon);
}

Interval candidate_interval_neg(const Vec3& p, double q_j, const Vec3& center_row,
                                double half_side, double epsilon) {
  const double norm = p.norm();
  if (norm == 0.0) {
    return {q_j - epsilon, q_j + epsilon};
  }
  const double theta = angle_between(center_row, p);
  double cos_lo = 0.0, cos_hi = 0.0;
  cos_bracket(theta, branch_angular_radius(half_side), cos_lo, cos_hi);
  return neg_interval(norm, cos_lo, cos_hi, q_j, epsilon);
}

AxisProblem::AxisProblem(const CorrespondenceSet& correspondences, Axis axis,
                         double epsilon)
    : axis_(axis), epsilon_(epsilon) {
  if (correspondences.empty()) {
    throw std::invalid_argument("AxisProblem: empty correspondence set");
  }
  if (!(epsilon > 0.0)) {
    throw std::invalid_argument("AxisProblem: epsilon must be positive");
  }
  const std::size_t n = correspondences.size();
  points_.reserve(n);
  unit_dirs_.reserve(n);
  norms_.reserve(n);
  targets_.reserve(n);
  const int j = axis_index(axis);
  for (const Correspondence& c : correspondences.pairs) {
    points_.push_back(c.p);
    const double norm = c.p.norm();
    norms_.push_back(norm);
    unit_dirs_.push_back(norm > 0.0 ? Vec3(c.p / norm) : Vec3::Zero());
    targets_.push_back(c.q(j));
  }
}

std::size_t AxisProblem::objective(const Vec3& row, double t) const {
  std::size_t count = 0;
  for (std::size_t i = 0; i < points_.size(); ++i) {
    if (std::abs(row.dot(points_[i]) + t - targets_[i]) <= epsilon_) {
      ++count;
    }
  }
  return count;
}

void AxisProblem::build_intervals(const Vec3& center_row, double alpha,
                                  std::vector<Interval>& pos,
                                  std::vector<Interval>& neg) const {
  const std::size_t n = points_.size();
  pos.clear();
  neg.clear();
  pos.reserve(n);
  neg.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double q_j = targets_[i];
    if (norms_[i] == 0.0) {
      pos.push_back({q_j - epsilon_, q_j + epsilon_});
      neg.push_back({q_j - epsilon_, q_j + epsilon_});
      continue;
    }
    const double dot = std::clamp(center_row.dot(unit_dirs_[i]), -1.0, 1.0);
    const double theta = std::acos(dot);
    double cos_lo = 0.0, cos_hi = 0.0;
    cos_bracket(theta, alpha, cos_lo, cos_hi);
    pos.push_back(pos_interval(norms_[i], cos_lo, cos_hi, q_j, epsilon_));
    neg.push_back(neg_interval(norms_[i], cos_lo, cos_hi, q_j, epsilon_));
  }
}

BoundEval upper_bound(const AxisProblem& problem, const Branch& branch) {
  std::vector<Interval> pos, neg;
  problem.build_intervals(exp_map_pos(branch.center),
                          branch_angular_radius(branch.half_side), pos, neg);
  const StabResult sp = stab(pos);
  const StabResult sn = stab(neg);
  return {std::max(sp.count, sn.count), sp.position, sn.position};
}

LowerEval lower_bound(const AxisProblem& problem, const Branch& branch) {
  const Vec3 row_pos = exp_map_pos(branch.center);
  const Vec3 row_neg = -row_pos;
  const std::size_t e_pos = problem.objective(row_pos, branch.stab_pos_pos);
  const std::size_t e_neg = problem.objective(row_neg, branch.stab_pos_neg);
  if (e_neg > e_pos) {
    return {e_neg, row_neg, branch.stab_pos_neg, Hemisphere::Negative};
  }
  return {e_pos, row_pos, branch.stab_pos_pos, Hemisphere::Positive};
}

AxisSolution solve_axis(const AxisProblem& problem, const SolveConfig& config) {
  return detail::bnb_search(
      [&problem](const Branch& b) { return upper_bound(problem, b); },
      [&problem](const Branch& b) { return lower_bound(problem, b); }, config);
}

}  // namespace rpreg
