#include "rpreg/interval.hpp"

#include <algorithm>

namespace rpreg {

namespace {

struct Event {
  double coord;
  int delta;  // +1 start, -1 end
};

}  // namespace

StabResult stab(std::span<const Interval> intervals) {
  if (intervals.empty()) {
    return {};
  }
  std::vector<Event> events;
  events.reserve(intervals.size() * 2);
  for (const Interval& iv : intervals) {
    events.push_back({iv.lo, +1});
    events.push_back({iv.hi, -1});
  }
  std::sort(events.begin(), events.end(), [](const Event& a, const Event& b) {
    if (a.coord != b.coord) return a.coord < b.coord;
    return a.delta > b.delta;  // starts before ends at equal coordinate
  });

  std::size_t count = 0;
  std::size_t best = 0;
  double region_lo = events.front().coord;
  double region_hi = events.front().coord;
  bool open = false;
  for (const Event& e : events) {
    if (e.delta > 0) {
      ++count;
      if (count > best) {
        best = count;
        region_lo = e.coord;
        open = true;
      }
    } else {
      if (open) {
        region_hi = e.coord;
        open = false;
      }
      --count;
    }
  }
  return {best, (region_lo + region_hi) / 2.0};
}

std::vector<Interval> merge_one_source(std::vector<Interval> intervals) {
  if (intervals.empty()) {
    return {};
  }
  std::sort(intervals.begin(), intervals.end(),
            [](const Interval& a, const Interval& b) {
              if (a.lo != b.lo) return a.lo < b.lo;
              return a.hi < b.hi;
            });
  std::vector<Interval> merged;
  Interval cur = intervals.front();
  for (std::size_t i = 1; i < intervals.size(); ++i) {
    const Interval& iv = intervals[i];
    if (iv.lo <= cur.hi) {
      cur.hi = std::max(cur.hi, iv.hi);
    } else {
      merged.push_back(cur);
      cur = iv;
    }
  }
  merged.push_back(cur);
  return merged;
}

StabResult grouped_stab(const std::vector<std::vector<Interval>>& groups) {
  std::vector<Interval> flat;
  for (const auto& group : groups) {
    const std::vector<Interval> merged = merge_one_source(group);
    flat.insert(flat.end(), merged.begin(), merged.end());
  }
  return stab(flat);
}

}  // namespace rpreg
