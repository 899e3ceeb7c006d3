#pragma once

#include "rpreg/axis_solver.hpp"
#include "rpreg/geometry.hpp"

#include <cstddef>
#include <vector>

namespace rpreg {

/// Correspondence-free axis sub-problem: each source point counts once when
/// some target point matches its residual projection within epsilon.
class SpcrProblem {
 public:
  /// Throws std::invalid_argument on empty clouds or epsilon <= 0.
  SpcrProblem(std::vector<Vec3> source, std::vector<Vec3> target, Axis axis,
              double epsilon);

  std::size_t source_size() const { return source_.size(); }
  std::size_t target_size() const { return target_.size(); }
  Axis axis() const { return axis_; }
  double epsilon() const { return epsilon_; }
  const std::vector<Vec3>& source() const { return source_; }
  const std::vector<Vec3>& target() const { return target_; }

  /// Number of source points with a feasible target match at (row, t).
  std::size_t objective(const Vec3& row, double t) const;

  /// True when some target projection falls inside [lo, hi].
  bool any_target_in(double lo, double hi) const;

  /// Target projections sorted ascending, with the original indices.
  const std::vector<double>& sorted_targets() const { return sorted_targets_; }
  const std::vector<std::size_t>& sorted_target_indices() const {
    return sorted_index_;
  }

  const std::vector<double>& source_norms() const { return norms_; }
  const std::vector<Vec3>& source_unit_dirs() const { return unit_dirs_; }

 private:
  std::vector<Vec3> source_;
  std::vector<Vec3> target_;
  std::vector<Vec3> unit_dirs_;
  std::vector<double> norms_;
  std::vector<double> sorted_targets_;
  std::vector<std::size_t> sorted_index_;
  Axis axis_;
  double epsilon_;
};

struct CandidatePair {
  std::size_t source_index = 0;
  std::size_t target_index = 0;
};

using CandidatePairSet = std::vector<CandidatePair>;

/// Upper bound over both hemispheres: per source point the target-shifted
/// candidate intervals are merged so the point contributes at most once,
/// then the concatenation is stabbed.
BoundEval spcr_upper_bound(const SpcrProblem& problem, const Branch& branch);

/// Exact objective at the branch center rows and cached stabbing positions.
LowerEval spcr_lower_bound(const SpcrProblem& problem, const Branch& branch);

AxisSolution spcr_solve_axis(const SpcrProblem& problem,
                             const SolveConfig& config = {});

/// All (source, target) index pairs feasible at the solution; the number of
/// distinct source indices equals solution.inliers.
CandidatePairSet extract_candidates(const SpcrProblem& problem,
                                    const AxisSolution& solution);

}  // namespace rpreg
