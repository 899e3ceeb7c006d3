#pragma once

#include "rpreg/geometry.hpp"

#include <cstddef>
#include <vector>

namespace rpreg {

/// One putative source/target point pair.
struct Correspondence {
  Vec3 p = Vec3::Zero();
  Vec3 q = Vec3::Zero();
};

struct CorrespondenceSet {
  std::vector<Correspondence> pairs;

  std::size_t size() const { return pairs.size(); }
  bool empty() const { return pairs.empty(); }
};

}  // namespace rpreg
