#include "rpreg/spcr.hpp"

#include "bnb_driver.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace rpreg {

SpcrProblem::SpcrProblem(std::vector<Vec3> source, std::vector<Vec3> target,
                         Axis axis, double epsilon)
    : source_(std::move(source)),
      target_(std::move(target)),
      axis_(axis),
      epsilon_(epsilon) {
  if (source_.empty() || target_.empty()) {
    throw std::invalid_argument("SpcrProblem: empty point cloud");
  }
  if (!(epsilon > 0.0)) {
    throw std::invalid_argument("SpcrProblem: epsilon must be positive");
  }
  norms_.reserve(source_.size());
  unit_dirs_.reserve(source_.size());
  for (const Vec3& p : source_) {
    const double norm = p.norm();
    norms_.push_back(norm);
    unit_dirs_.push_back(norm > 0.0 ? Vec3(p / norm) : Vec3::Zero());
  }
  const int j = axis_index(axis);
  sorted_index_.resize(target_.size());
  std::iota(sorted_index_.begin(), sorted_index_.end(), std::size_t{0});
  std::sort(sorted_index_.begin(), sorted_index_.end(),
            [&](std::size_t a, std::size_t b) {
              if (target_[a](j) != target_[b](j)) return target_[a](j) < target_[b](j);
              return a < b;
            });
  sorted_targets_.reserve(target_.size());
  for (std::size_t k : sorted_index_) {
    sorted_targets_.push_back(target_[k](j));
  }
}

bool SpcrProblem::any_target_in(double lo, double hi) const {
  const auto it = std::lower_bound(sorted_targets_.begin(), sorted_targets_.end(), lo);
  return it != sorted_targets_.end() && *it <= hi;
}

std::size_t SpcrProblem::objective(const Vec3& row, double t) const {
  std::size_t count = 0;
  for (const Vec3& p : source_) {
    const double proj = row.dot(p) + t;
    if (any_target_in(proj - epsilon_, proj + epsilon_)) {
      ++count;
    }
  }
  return count;
}

namespace {

// The candidate intervals of one source point differ only by the target
// shift q_k^j, so with targets presorted the per-point merge is a single
// linear pass: a gap opens exactly when the target spacing exceeds the
// common interval width.
void append_merged(std::span<const double> sorted_targets, double base_lo,
                   double base_hi, std::vector<Interval>& out) {
  double lo = base_lo + sorted_targets[0];
  double hi = base_hi + sorted_targets[0];
  for (std::size_t k = 1; k < sorted_targets.size(); ++k) {
    const double next_lo = base_lo + sorted_targets[k];
    const double next_hi = base_hi + sorted_targets[k];
    if (next_lo <= hi) {
      hi = next_hi;
    } else {
      out.push_back({lo, hi});
      lo = next_lo;
      hi = next_hi;
    }
  }
  out.push_back({lo, hi});
}

}  // namespace

BoundEval spcr_upper_bound(const SpcrProblem& problem, const Branch& branch) {
  const Vec3 center_row = exp_map_pos(branch.center);
  const double alpha = branch_angular_radius(branch.half_side);
  const double eps = problem.epsilon();
  const std::vector<double>& targets = problem.sorted_targets();
  const std::vector<double>& norms = problem.source_norms();
  const std::vector<Vec3>& dirs = problem.source_unit_dirs();

  std::vector<Interval> pos, neg;
  pos.reserve(problem.source_size());
  neg.reserve(problem.source_size());
  for (std::size_t i = 0; i < problem.source_size(); ++i) {
    double cos_lo = 0.0, cos_hi = 0.0;
    if (norms[i] == 0.0) {
      cos_lo = cos_hi = 0.0;
    } else {
      const double dot = std::clamp(center_row.dot(dirs[i]), -1.0, 1.0);
      const double theta = std::acos(dot);
      cos_hi = std::cos(std::max(theta - alpha, 0.0));
      cos_lo = std::cos(std::min(theta + alpha, kPi));
    }
    append_merged(targets, -eps - norms[i] * cos_hi, eps - norms[i] * cos_lo, pos);
    append_merged(targets, -eps + norms[i] * cos_lo, eps + norms[i] * cos_hi, neg);
  }
  const StabResult sp = stab(pos);
  const StabResult sn = stab(neg);
  return {std::max(sp.count, sn.count), sp.position, sn.position};
}

LowerEval spcr_lower_bound(const SpcrProblem& problem, const Branch& branch) {
  const Vec3 row_pos = exp_map_pos(branch.center);
  const Vec3 row_neg = -row_pos;
  const std::size_t e_pos = problem.objective(row_pos, branch.stab_pos_pos);
  const std::size_t e_neg = problem.objective(row_neg, branch.stab_pos_neg);
  if (e_neg > e_pos) {
    return {e_neg, row_neg, branch.stab_pos_neg, Hemisphere::Negative};
  }
  return {e_pos, row_pos, branch.stab_pos_pos, Hemisphere::Positive};
}

AxisSolution spcr_solve_axis(const SpcrProblem& problem, const SolveConfig& config) {
  return detail::bnb_search(
      [&problem](const Branch& b) { return spcr_upper_bound(problem, b); },
      [&problem](const Branch& b) { return spcr_lower_bound(problem, b); }, config);
}

CandidatePairSet extract_candidates(const SpcrProblem& problem,
                                    const AxisSolution& solution) {
  CandidatePairSet pairs;
  const std::vector<double>& targets = problem.sorted_targets();
  const std::vector<std::size_t>& index = problem.sorted_target_indices();
  const double eps = problem.epsilon();
  std::vector<std::size_t> matched;
  for (std::size_t i = 0; i < problem.source_size(); ++i) {
    const double proj = solution.row.dot(problem.source()[i]) + solution.t;
    const double lo = proj - eps;
    const double hi = proj + eps;
    matched.clear();
    for (auto it = std::lower_bound(targets.begin(), targets.end(), lo);
         it != targets.end() && *it <= hi; ++it) {
      matched.push_back(index[static_cast<std::size_t>(it - targets.begin())]);
    }
    std::sort(matched.begin(), matched.end());
    for (std::size_t k : matched) {
      pairs.push_back({i, k});
    }
  }
  return pairs;
}

}  // namespace rpreg
