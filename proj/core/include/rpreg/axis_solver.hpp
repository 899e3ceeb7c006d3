#pragma once

#include "rpreg/correspondence.hpp"
#include "rpreg/geometry.hpp"
#include "rpreg/interval.hpp"

#include <array>
#include <cstdint>
#include <vector>

namespace rpreg {

/// Square cell of the 2-D disk domain with cached bound data.
struct Branch {
  Vec2 center = Vec2::Zero();
  double half_side = 0.0;
  std::size_t upper = 0;      // cached upper bound
  double stab_pos_pos = 0.0;  // max-stabbing position, upper hemisphere
  double stab_pos_neg = 0.0;  // max-stabbing position, lower hemisphere
};

/// Quadtree split into four children of half the side length.
std::array<Branch, 4> subdivide(const Branch& branch);

enum class Hemisphere { Positive, Negative };

/// Feasible translation range for one correspondence over all rows mapped
/// from a branch of the upper hemisphere:
///   [ -eps - |p| cos(max{theta - a, 0}) + q_j,
///      eps - |p| cos(min{theta + a, pi}) + q_j ]
/// with theta the angle between the branch center row and p, and
/// a = sqrt(2) * half_side. A zero-norm p degenerates to [q_j-eps, q_j+eps].
Interval candidate_interval_pos(const Vec3& p, double q_j, const Vec3& center_row,
                                double half_side, double epsilon);

/// Lower-hemisphere counterpart (cosine terms enter with flipped sign).
Interval candidate_interval_neg(const Vec3& p, double q_j, const Vec3& center_row,
                                double half_side, double epsilon);

/// One residual-projection sub-problem: maximize over (row, t) the number of
/// correspondences with |row . p_i + t - q_i^axis| <= epsilon.
class AxisProblem {
 public:
  /// Throws std::invalid_argument on an empty set or epsilon <= 0.
  AxisProblem(const CorrespondenceSet& correspondences, Axis axis, double epsilon);

  std::size_t size() const { return points_.size(); }
  Axis axis() const { return axis_; }
  double epsilon() const { return epsilon_; }
  const std::vector<double>& projected_targets() const { return targets_; }
  const std::vector<Vec3>& points() const { return points_; }

  /// Exact objective value at (row, t).
  std::size_t objective(const Vec3& row, double t) const;

  /// Candidate intervals of every correspondence for both hemispheres, for a
  /// branch with the given center row and angular radius alpha.
  void build_intervals(const Vec3& center_row, double alpha,
                       std::vector<Interval>& pos, std::vector<Interval>& neg) const;

 private:
  std::vector<Vec3> points_;
  std::vector<Vec3> unit_dirs_;  // zero vector for zero-norm points
  std::vector<double> norms_;
  std::vector<double> targets_;  // q_i projected on the axis
  Axis axis_;
  double epsilon_;
};

struct BoundEval {
  std::size_t upper = 0;
  double stab_pos_pos = 0.0;
  double stab_pos_neg = 0.0;
};

struct LowerEval {
  std::size_t lower = 0;
  Vec3 row = Vec3::UnitZ();
  double t = 0.0;
  Hemisphere hemisphere = Hemisphere::Positive;
};

/// Upper bound over both hemispheres: max-stabbing counts of the candidate
/// intervals, with the two stabbing positions recorded.
BoundEval upper_bound(const AxisProblem& problem, const Branch& branch);

/// Exact objective at the branch center rows paired with the cached stabbing
/// positions; expects upper_bound() to have filled the branch.
LowerEval lower_bound(const AxisProblem& problem, const Branch& branch);

struct SolveConfig {
  /// Branches narrower than this are retired instead of refined; a retired
  /// branch whose bound beats the final incumbent leaves the solution
  /// flagged non-certified.
  double min_sigma = 1e-8;
  /// 0 = unlimited.
  std::uint64_t max_iterations = 0;
};

struct AxisSolution {
  Vec3 row = Vec3::UnitZ();
  double t = 0.0;
  std::size_t inliers = 0;
  std::uint64_t iterations = 0;
  Hemisphere hemisphere = Hemisphere::Positive;
  bool converged = false;  // true iff the bound gap closed to zero
};

/// Best-first branch-and-bound over the circumscribed square [-pi/2, pi/2]^2
/// of the disk domain; both hemispheres are bounded on the same square.
AxisSolution solve_axis(const AxisProblem& problem, const SolveConfig& config = {});

}  // namespace rpreg
