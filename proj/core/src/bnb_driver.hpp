#pragma once

#include "rpreg/axis_solver.hpp"

#include <cstdint>
#include <queue>
#include <vector>

namespace rpreg::detail {

// Shared best-first BnB loop over the square disk domain. UpperFn fills the
// branch bound cache, LowerFn evaluates the exact objective at the center
// rows. Selection: maximal upper bound, ties broken by smaller half side,
// then insertion order.
template <class UpperFn, class LowerFn>
AxisSolution bnb_search(UpperFn&& eval_upper, LowerFn&& eval_lower,
                        const SolveConfig& config) {
  struct Entry {
    Branch branch;
    std::uint64_t seq;
  };
  struct Worse {
    bool operator()(const Entry& a, const Entry& b) const {
      if (a.branch.upper != b.branch.upper) return a.branch.upper < b.branch.upper;
      if (a.branch.half_side != b.branch.half_side)
        return a.branch.half_side > b.branch.half_side;
      return a.seq > b.seq;
    }
  };

  Branch root;
  root.center = Vec2::Zero();
  root.half_side = kHalfPi;
  const BoundEval root_bounds = eval_upper(root);
  root.upper = root_bounds.upper;
  root.stab_pos_pos = root_bounds.stab_pos_pos;
  root.stab_pos_neg = root_bounds.stab_pos_neg;

  AxisSolution best;
  const LowerEval root_lower = eval_lower(root);
  std::size_t incumbent = root_lower.lower;
  best.row = root_lower.row;
  best.t = root_lower.t;
  best.hemisphere = root_lower.hemisphere;

  std::priority_queue<Entry, std::vector<Entry>, Worse> queue;
  std::uint64_t seq = 0;
  if (root.upper > incumbent) {
    queue.push({root, seq++});
  }

  std::uint64_t iterations = 0;
  std::size_t floored_upper = 0;  // best bound among branches below min_sigma
  bool budget_hit = false;
  while (!queue.empty()) {
    const Branch top = queue.top().branch;
    if (top.upper <= incumbent) {
      break;  // gap closed over every live branch
    }
    if (config.max_iterations != 0 && iterations >= config.max_iterations) {
      budget_hit = true;
      break;
    }
    queue.pop();
    if (top.half_side < config.min_sigma) {
      // resolution floor: retire the branch instead of refining further
      floored_upper = std::max(floored_upper, top.upper);
      continue;
    }
    ++iterations;
    for (Branch child : subdivide(top)) {
      const BoundEval bounds = eval_upper(child);
      child.upper = bounds.upper;
      child.stab_pos_pos = bounds.stab_pos_pos;
      child.stab_pos_neg = bounds.stab_pos_neg;
      const LowerEval lower = eval_lower(child);
      if (lower.lower > incumbent) {
        incumbent = lower.lower;
        best.row = lower.row;
        best.t = lower.t;
        best.hemisphere = lower.hemisphere;
      }
      if (child.upper > incumbent) {
        queue.push({child, seq++});
      }
    }
  }
  best.inliers = incumbent;
  best.iterations = iterations;
  best.converged = !budget_hit && floored_upper <= incumbent;
  return best;
}

}  // namespace rpreg::detail
