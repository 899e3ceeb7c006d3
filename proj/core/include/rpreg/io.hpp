#pragma once

#include "rpreg/correspondence.hpp"
#include "rpreg/geometry.hpp"
#include "rpreg/registration.hpp"

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

namespace rpreg {

/// File or parse failure; the message carries the offending line number
/// where one applies.
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Text correspondences, one "px py pz qx qy qz" line per pair. Lines
/// starting with '#' and blank lines are skipped.
CorrespondenceSet load_correspondences(const std::filesystem::path& path);

/// Writes with 17 significant digits so a round trip is value-exact.
void save_correspondences(const std::filesystem::path& path,
                          const CorrespondenceSet& correspondences);

/// ASCII XYZ (first three columns per line) or ASCII PLY (vertex x/y/z
/// properties). Binary PLY and unknown extensions are rejected.
std::vector<Vec3> load_cloud(const std::filesystem::path& path);

void save_cloud_xyz(const std::filesystem::path& path,
                    const std::vector<Vec3>& cloud);

/// Registration result serialized as JSON: rotation (9, row-major),
/// translation (3), consensus, per_axis_inliers, orthogonality_defect,
/// certified, iterations, runtime_ms, epsilon.
std::string result_to_json_string(const RegistrationResult& result);
void save_result_json(const std::filesystem::path& path,
                      const RegistrationResult& result);

/// Ground-truth/transform JSON: rotation (9, row-major) and translation (3).
std::string transform_to_json_string(const RigidTransform& transform);
void save_transform_json(const std::filesystem::path& path,
                         const RigidTransform& transform);

/// Reads the rotation/translation fields of either JSON flavour above.
RigidTransform load_transform_json(const std::filesystem::path& path);

}  // namespace rpreg
