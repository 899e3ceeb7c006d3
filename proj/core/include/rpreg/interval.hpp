#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace rpreg {

/// Closed interval [lo, hi] on the translation-component line.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  bool contains(double t) const { return lo <= t && t <= hi; }
};

/// Max-stabbing outcome. `position` is meaningful only when count > 0.
struct StabResult {
  std::size_t count = 0;
  double position = 0.0;
};

/// Finds a probe position contained in the maximum number of closed
/// intervals (sweep line, O(N log N)). Start events at a coordinate are
/// processed before end events so touching intervals both count at the
/// shared endpoint. Among maximal regions the midpoint of the
/// lowest-coordinate one is returned (the point itself when degenerate).
StabResult stab(std::span<const Interval> intervals);

/// Collapses the intervals of one source point into disjoint intervals,
/// sorted ascending; touching intervals (hi == next lo) are merged. The
/// union of the output equals the union of the input.
std::vector<Interval> merge_one_source(std::vector<Interval> intervals);

/// Max-stabbing over groups where each group counts at most once: every
/// group is merged and the concatenation is stabbed.
StabResult grouped_stab(const std::vector<std::vector<Interval>>& groups);

}  // namespace rpreg
