#pragma once

#include "rpreg/axis_solver.hpp"
#include "rpreg/correspondence.hpp"
#include "rpreg/geometry.hpp"
#include "rpreg/spcr.hpp"

#include <array>
#include <stdexcept>

namespace rpreg {

/// Raised when a registration run cannot produce a usable result.
struct RegistrationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RegistrationConfig {
  SolveConfig solve;
  /// Orthogonality defect above which the result is flagged not certified.
  double defect_threshold = 0.15;
  /// Least-squares refinement of the transform on the joint inlier set.
  bool refine = false;
  /// Axis solved correspondence-free in register_spcr.
  Axis spcr_first_axis = Axis::X;
};

struct RegistrationResult {
  RigidTransform transform;
  std::array<AxisSolution, 3> axis_solutions;  // indexed by Axis
  std::size_t consensus = 0;
  double orthogonality_defect = 0.0;
  bool certified = false;
  std::array<double, 3> axis_runtime_ms{0.0, 0.0, 0.0};
  double epsilon = 0.0;
};

/// Exact count of correspondences whose residual stays within epsilon on all
/// three coordinate projections.
std::size_t evaluate_joint_objective(const CorrespondenceSet& correspondences,
                                     const RigidTransform& transform,
                                     double epsilon);

/// Count of source points with some target within epsilon on all three
/// projections under the transform.
std::size_t evaluate_spcr_joint(const std::vector<Vec3>& source,
                                const std::vector<Vec3>& target,
                                const RigidTransform& transform, double epsilon);

/// Solves the three axis sub-problems independently, stacks the rows,
/// projects them onto SO(3), re-estimates each translation component at the
/// projected rows, and reports the joint consensus.
RegistrationResult register_correspondences(const CorrespondenceSet& correspondences,
                                            double epsilon,
                                            const RegistrationConfig& config = {});

/// Correspondence-free entry point: the first axis is solved jointly over
/// all source/target pairings, the surviving candidate pairs feed the two
/// remaining correspondence-based solves.
RegistrationResult register_spcr(const std::vector<Vec3>& source,
                                 const std::vector<Vec3>& target, double epsilon,
                                 const RegistrationConfig& config = {});

}  // namespace rpreg
