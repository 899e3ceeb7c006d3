#include "rpreg/registration.hpp"

#include <Eigen/Dense>

#include <chrono>
#include <cmath>
#include <iostream>
#include <vector>

namespace rpreg {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

// Exact translation window stab for one axis at a fixed row.
double restab_translation(const CorrespondenceSet& correspondences, const Vec3& row,
                          int axis, double epsilon) {
  std::vector<Interval> windows;
  windows.reserve(correspondences.size());
  for (const Correspondence& c : correspondences.pairs) {
    const double shift = c.q(axis) - row.dot(c.p);
    windows.push_back({shift - epsilon, shift + epsilon});
  }
  return stab(windows).position;
}

struct Assembly {
  RigidTransform transform;
  double defect = 0.0;
};

Assembly assemble(const std::array<AxisSolution, 3>& solutions,
                  const CorrespondenceSet& correspondences, double epsilon) {
  Mat3 rows;
  for (int j = 0; j < 3; ++j) {
    rows.row(j) = solutions[static_cast<std::size_t>(j)].row.transpose();
  }
  Assembly out;
  out.defect = (rows * rows.transpose() - Mat3::Identity()).cwiseAbs().maxCoeff();
  out.transform.rotation = nearest_rotation(rows);
  for (int j = 0; j < 3; ++j) {
    out.transform.translation(j) = restab_translation(
        correspondences, out.transform.rotation.row(j).transpose(), j, epsilon);
  }
  return out;
}

// Kabsch fit on the inlier pairs; falls back to the input transform when the
// inlier set is too small.
RigidTransform refine_on_inliers(const CorrespondenceSet& correspondences,
                                 const RigidTransform& transform, double epsilon) {
  std::vector<const Correspondence*> inliers;
  for (const Correspondence& c : correspondences.pairs) {
    if ((apply_transform(transform, c.p) - c.q).cwiseAbs().maxCoeff() <= epsilon) {
      inliers.push_back(&c);
    }
  }
  if (inliers.size() < 3) {
    return transform;
  }
  Eigen::Matrix3Xd src(3, inliers.size());
  Eigen::Matrix3Xd dst(3, inliers.size());
  for (std::size_t i = 0; i < inliers.size(); ++i) {
    src.col(static_cast<Eigen::Index>(i)) = inliers[i]->p;
    dst.col(static_cast<Eigen::Index>(i)) = inliers[i]->q;
  }
  const Eigen::Matrix4d T = Eigen::umeyama(src, dst, false);
  RigidTransform refined;
  refined.rotation = T.topLeftCorner<3, 3>();
  refined.translation = T.topRightCorner<3, 1>();
  return refined;
}

}  // namespace

std::size_t evaluate_joint_objective(const CorrespondenceSet& correspondences,
                                     const RigidTransform& transform,
                                     double epsilon) {
  std::size_t count = 0;
  for (const Correspondence& c : correspondences.pairs) {
    bool inlier = true;
    for (int j = 0; j < 3 && inlier; ++j) {
      const double resid =
          transform.rotation.row(j).dot(c.p) + transform.translation(j) - c.q(j);
      inlier = std::abs(resid) <= epsilon;
    }
    count += inlier ? 1 : 0;
  }
  return count;
}

std::size_t evaluate_spcr_joint(const std::vector<Vec3>& source,
                                const std::vector<Vec3>& target,
                                const RigidTransform& transform, double epsilon) {
  std::size_t count = 0;
  for (const Vec3& p : source) {
    const Vec3 mapped = apply_transform(transform, p);
    for (const Vec3& q : target) {
      if ((mapped - q).cwiseAbs().maxCoeff() <= epsilon) {
        ++count;
        break;
      }
    }
  }
  return count;
}

RegistrationResult register_correspondences(const CorrespondenceSet& correspondences,
                                            double epsilon,
                                            const RegistrationConfig& config) {
  if (correspondences.empty()) {
    throw std::invalid_argument("register_correspondences: empty correspondence set");
  }
  if (correspondences.size() < 3) {
    std::cerr << "rpreg: warning: registering from fewer than 3 correspondences\n";
  }

  RegistrationResult result;
  result.epsilon = epsilon;
  for (Axis axis : kAllAxes) {
    const auto start = Clock::now();
    const AxisProblem problem(correspondences, axis, epsilon);
    const std::size_t j = static_cast<std::size_t>(axis_index(axis));
    result.axis_solutions[j] = solve_axis(problem, config.solve);
    result.axis_runtime_ms[j] = elapsed_ms(start);
  }

  const Assembly assembly = assemble(result.axis_solutions, correspondences, epsilon);
  result.transform = assembly.transform;
  result.orthogonality_defect = assembly.defect;
  result.consensus = evaluate_joint_objective(correspondences, result.transform, epsilon);

  bool converged = true;
  for (const AxisSolution& sol : result.axis_solutions) {
    converged = converged && sol.converged;
  }
  result.certified = converged && assembly.defect <= config.defect_threshold;

  if (config.refine) {
    result.transform = refine_on_inliers(correspondences, result.transform, epsilon);
    result.consensus =
        evaluate_joint_objective(correspondences, result.transform, epsilon);
  }
  return result;
}

RegistrationResult register_spcr(const std::vector<Vec3>& source,
                                 const std::vector<Vec3>& target, double epsilon,
                                 const RegistrationConfig& config) {
  if (source.empty() || target.empty()) {
    throw std::invalid_argument("register_spcr: empty point cloud");
  }
  if (source.size() < 3 || target.size() < 3) {
    std::cerr << "rpreg: warning: SPCR registration from fewer than 3 points\n";
  }

  RegistrationResult result;
  result.epsilon = epsilon;

  const Axis first = config.spcr_first_axis;
  const std::size_t jf = static_cast<std::size_t>(axis_index(first));
  auto start = Clock::now();
  const SpcrProblem first_problem(source, target, first, epsilon);
  result.axis_solutions[jf] = spcr_solve_axis(first_problem, config.solve);
  const CandidatePairSet candidates =
      extract_candidates(first_problem, result.axis_solutions[jf]);
  result.axis_runtime_ms[jf] = elapsed_ms(start);
  if (candidates.empty()) {
    throw RegistrationError("register_spcr: no candidate correspondences survived the first axis");
  }

  CorrespondenceSet pairs;
  pairs.pairs.reserve(candidates.size());
  for (const CandidatePair& c : candidates) {
    pairs.pairs.push_back({source[c.source_index], target[c.target_index]});
  }

  for (Axis axis : kAllAxes) {
    if (axis == first) continue;
    start = Clock::now();
    const AxisProblem problem(pairs, axis, epsilon);
    const std::size_t j = static_cast<std::size_t>(axis_index(axis));
    result.axis_solutions[j] = solve_axis(problem, config.solve);
    result.axis_runtime_ms[j] = elapsed_ms(start);
  }

  const Assembly assembly = assemble(result.axis_solutions, pairs, epsilon);
  result.transform = assembly.transform;
  result.orthogonality_defect = assembly.defect;
  result.consensus = evaluate_spcr_joint(source, target, result.transform, epsilon);

  bool converged = true;
  for (const AxisSolution& sol : result.axis_solutions) {
    converged = converged && sol.converged;
  }
  result.certified = converged && assembly.defect <= config.defect_threshold;

  if (config.refine) {
    result.transform = refine_on_inliers(pairs, result.transform, epsilon);
    result.consensus = evaluate_spcr_joint(source, target, result.transform, epsilon);
  }
  return result;
}

}  // namespace rpreg
