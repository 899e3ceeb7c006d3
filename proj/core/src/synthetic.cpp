#include "rpreg/synthetic.hpp"

#include "rpreg/io.hpp"

#include <Eigen/Geometry>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rpreg {

double SplitMix64::normal() {
  double u1 = uniform();
  if (u1 <= 0.0) {
    u1 = 0x1.0p-53;
  }
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
}

std::uint64_t SplitMix64::below(std::uint64_t bound) {
  if (bound == 0) {
    return 0;
  }
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
  std::uint64_t x = next();
  while (x >= limit) {
    x = next();
  }
  return x % bound;
}

Mat3 random_rotation(SplitMix64& rng) {
  const double w = rng.normal();
  const double x = rng.normal();
  const double y = rng.normal();
  const double z = rng.normal();
  Eigen::Quaterniond q(w, x, y, z);
  q.normalize();
  return q.toRotationMatrix();
}

namespace {

Vec3 uniform_in_cube(SplitMix64& rng, double half_width) {
  return Vec3(rng.uniform(-half_width, half_width),
              rng.uniform(-half_width, half_width),
              rng.uniform(-half_width, half_width));
}

// First k slots of a partial Fisher-Yates shuffle of 0..n-1.
std::vector<std::size_t> sample_indices(SplitMix64& rng, std::size_t n,
                                        std::size_t k) {
  std::vector<std::size_t> index(n);
  for (std::size_t i = 0; i < n; ++i) index[i] = i;
  for (std::size_t i = 0; i < k && i + 1 < n; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng.below(n - i));
    std::swap(index[i], index[j]);
  }
  index.resize(std::min(k, n));
  return index;
}

}  // namespace

SynthData synth_correspondences(const SynthConfig& config) {
  if (config.n == 0) {
    throw std::invalid_argument("synth_correspondences: n must be positive");
  }
  if (config.outlier_rate < 0.0 || config.outlier_rate >= 1.0) {
    throw std::invalid_argument("synth_correspondences: outlier rate must be in [0, 1)");
  }
  if (config.noise_sigma < 0.0) {
    throw std::invalid_argument("synth_correspondences: negative noise sigma");
  }

  SplitMix64 rng(config.seed);
  SynthData data;
  data.ground_truth.rotation = random_rotation(rng);
  data.ground_truth.translation = uniform_in_cube(rng, config.cube_half_width);

  data.correspondences.pairs.reserve(config.n);
  for (std::size_t i = 0; i < config.n; ++i) {
    const Vec3 p = uniform_in_cube(rng, config.cube_half_width);
    data.correspondences.pairs.push_back({p, apply_transform(data.ground_truth, p)});
  }

  const std::size_t outliers =
      static_cast<std::size_t>(config.outlier_rate * static_cast<double>(config.n));
  for (std::size_t i : sample_indices(rng, config.n, outliers)) {
    data.correspondences.pairs[i].q = uniform_in_cube(rng, config.cube_half_width);
  }

  if (config.noise_sigma > 0.0) {
    for (Correspondence& c : data.correspondences.pairs) {
      c.q += Vec3(rng.normal(0.0, config.noise_sigma),
                  rng.normal(0.0, config.noise_sigma),
                  rng.normal(0.0, config.noise_sigma));
    }
  }
  return data;
}

SpcrSynthData synth_spcr(const SpcrSynthConfig& config) {
  if (config.m == 0) {
    throw std::invalid_argument("synth_spcr: m must be positive");
  }
  if (config.overlap_rate <= 0.0 || config.overlap_rate > 1.0) {
    throw std::invalid_argument("synth_spcr: overlap rate must be in (0, 1]");
  }

  std::vector<Vec3> base = config.cloud_path.empty()
                               ? builtin_blob_cloud(config.builtin_points, config.seed)
                               : load_cloud(config.cloud_path);
  if (base.size() < config.m) {
    throw std::invalid_argument("synth_spcr: base cloud smaller than m");
  }

  SplitMix64 rng(config.seed);
  SpcrSynthData data;
  data.ground_truth.rotation = random_rotation(rng);
  data.ground_truth.translation = uniform_in_cube(rng, config.cube_half_width);

  data.source.reserve(config.m);
  for (std::size_t i : sample_indices(rng, base.size(), config.m)) {
    data.source.push_back(base[i]);
  }

  const std::size_t removed = static_cast<std::size_t>(
      (1.0 - config.overlap_rate) * static_cast<double>(config.m));
  const std::size_t kept = config.m - removed;
  std::vector<std::size_t> keep = sample_indices(rng, config.m, kept);
  std::sort(keep.begin(), keep.end());
  data.target.reserve(kept);
  for (std::size_t i : keep) {
    data.target.push_back(apply_transform(data.ground_truth, data.source[i]));
  }

  if (config.noise_sigma > 0.0) {
    for (Vec3& p : data.source) {
      p += Vec3(rng.normal(0.0, config.noise_sigma),
                rng.normal(0.0, config.noise_sigma),
                rng.normal(0.0, config.noise_sigma));
    }
  }
  return data;
}

std::vector<Vec3> builtin_blob_cloud(std::size_t count, std::uint64_t seed) {
  SplitMix64 rng(seed ^ 0xB10BB10Bull);
  std::vector<Vec3> cloud;
  cloud.reserve(count);
  double max_abs = 0.0;
  for (std::size_t i = 0; i < count; ++i) {
    Vec3 dir(rng.normal(), rng.normal(), rng.normal());
    if (dir.norm() == 0.0) {
      dir = Vec3::UnitZ();
    }
    dir.normalize();
    const double radius = 1.0 + 0.35 * std::sin(3.0 * dir.x() + 2.0 * dir.y()) *
                                    std::cos(2.0 * dir.z());
    const Vec3 p = radius * dir;
    max_abs = std::max(max_abs, p.cwiseAbs().maxCoeff());
    cloud.push_back(p);
  }
  for (Vec3& p : cloud) {
    p /= max_abs;
  }
  return cloud;
}

}  // namespace rpreg
