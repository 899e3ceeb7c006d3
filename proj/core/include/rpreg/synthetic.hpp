#pragma once

#include "rpreg/correspondence.hpp"
#include "rpreg/geometry.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace rpreg {

/// splitmix64 generator. All experiment randomness flows through this one
/// fixed algorithm so identical seeds reproduce identical data on any
/// platform (std:: distributions are implementation-defined).
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    state_ += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, 1), 53-bit resolution.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Standard normal via Box-Muller (one deviate per call).
  double normal();

  double normal(double mean, double stddev) { return mean + stddev * normal(); }

  /// Uniform integer in [0, bound) by rejection.
  std::uint64_t below(std::uint64_t bound);

 private:
  std::uint64_t state_;
};

/// Rotation drawn uniformly from SO(3) via a normalized Gaussian quaternion.
Mat3 random_rotation(SplitMix64& rng);

struct SynthConfig {
  std::size_t n = 100;
  double cube_half_width = 100.0;
  double noise_sigma = 0.0;
  double outlier_rate = 0.0;  // in [0, 1)
  std::uint64_t seed = 0;
};

struct SynthData {
  CorrespondenceSet correspondences;
  RigidTransform ground_truth;
};

/// Source points uniform in the cube, target = R*p + t, floor(eta*n) target
/// points replaced by fresh uniform cube samples, Gaussian noise added to
/// every target point. Bit-identical under the same seed.
SynthData synth_correspondences(const SynthConfig& config);

struct SpcrSynthConfig {
  std::size_t m = 100;        // downsampled source size
  double overlap_rate = 0.6;  // fraction of target points kept, in (0, 1]
  double noise_sigma = 0.001;
  double cube_half_width = 1.0;
  std::uint64_t seed = 0;
  /// Cloud file to downsample; empty selects the built-in blob cloud.
  std::string cloud_path;
  std::size_t builtin_points = 2000;
};

struct SpcrSynthData {
  std::vector<Vec3> source;
  std::vector<Vec3> target;
  RigidTransform ground_truth;
};

/// Downsamples the base cloud to m source points, transforms them into the
/// target cloud, removes floor((1-rho)*m) target points, then perturbs the
/// source with Gaussian noise.
SpcrSynthData synth_spcr(const SpcrSynthConfig& config);

/// Deterministic non-degenerate test cloud: points on a smooth radially
/// modulated sphere, scaled into [-1, 1]^3.
std::vector<Vec3> builtin_blob_cloud(std::size_t count, std::uint64_t seed);

}  // namespace rpreg
