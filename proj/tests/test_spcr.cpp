#include "rpreg/spcr.hpp"
#include "rpreg/synthetic.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <vector>

using namespace rpreg;

namespace {

std::vector<Vec3> random_cloud(SplitMix64& rng, std::size_t n, double scale = 1.0) {
  std::vector<Vec3> cloud;
  for (std::size_t i = 0; i < n; ++i) {
    cloud.push_back(Vec3(rng.uniform(-scale, scale), rng.uniform(-scale, scale),
                         rng.uniform(-scale, scale)));
  }
  return cloud;
}

// Exhaustive double loop, the reference for the SPCR objective.
std::size_t brute_objective(const std::vector<Vec3>& source,
                            const std::vector<Vec3>& target, Axis axis,
                            double epsilon, const Vec3& row, double t) {
  const int j = axis_index(axis);
  std::size_t count = 0;
  for (const Vec3& p : source) {
    for (const Vec3& q : target) {
      if (std::abs(row.dot(p) + t - q(j)) <= epsilon) {
        ++count;
        break;
      }
    }
  }
  return count;
}

Branch make_branch(const SpcrProblem& problem, const Vec2& center,
                   double half_side) {
  Branch b;
  b.center = center;
  b.half_side = half_side;
  const BoundEval be = spcr_upper_bound(problem, b);
  b.upper = be.upper;
  b.stab_pos_pos = be.stab_pos_pos;
  b.stab_pos_neg = be.stab_pos_neg;
  return b;
}

// Exact max over t at a fixed row via per-source merged windows.
std::size_t max_over_t(const SpcrProblem& problem, const Vec3& row) {
  const int j = axis_index(problem.axis());
  std::vector<std::vector<Interval>> groups;
  for (const Vec3& p : problem.source()) {
    std::vector<Interval> windows;
    for (const Vec3& q : problem.target()) {
      const double shift = q(j) - row.dot(p);
      windows.push_back({shift - problem.epsilon(), shift + problem.epsilon()});
    }
    groups.push_back(std::move(windows));
  }
  return grouped_stab(groups).count;
}

}  // namespace

TEST_CASE("spcr objective matches the double-loop oracle") {
  SplitMix64 rng(307);
  for (int trial = 0; trial < 300; ++trial) {
    const std::vector<Vec3> P = random_cloud(rng, 1 + rng.below(8));
    const std::vector<Vec3> Q = random_cloud(rng, 1 + rng.below(8));
    const double eps = rng.uniform(0.05, 0.6);
    const SpcrProblem problem(P, Q, Axis::Y, eps);
    for (int s = 0; s < 10; ++s) {
      const Vec3 row = exp_map_pos(
          Vec2(rng.uniform(-kHalfPi, kHalfPi), rng.uniform(-kHalfPi, kHalfPi)));
      const double t = rng.uniform(-2.0, 2.0);
      CHECK(problem.objective(row, t) ==
            brute_objective(P, Q, Axis::Y, eps, row, t));
    }
  }
}

TEST_CASE("spcr objective saturation cases") {
  SplitMix64 rng(311);
  const std::vector<Vec3> P = random_cloud(rng, 12);
  const SpcrProblem self(P, P, Axis::X, 0.01);
  CHECK(self.objective(Vec3::UnitX(), 0.0) == 12);

  const SpcrProblem far(std::vector<Vec3>{Vec3(0, 0, 1)},
                        std::vector<Vec3>{Vec3(0, 0, 100)}, Axis::Z, 0.5);
  CHECK(far.objective(Vec3::UnitZ(), 0.0) == 0);
}

TEST_CASE("spcr upper bound dominates sampled objectives, single group saturates") {
  SplitMix64 rng(313);
  for (int trial = 0; trial < 150; ++trial) {
    const std::vector<Vec3> P = random_cloud(rng, 1 + rng.below(5));
    const std::vector<Vec3> Q = random_cloud(rng, 1 + rng.below(4));
    const double eps = rng.uniform(0.05, 0.4);
    const SpcrProblem problem(P, Q, Axis::X, eps);

    const Vec2 center(rng.uniform(-kHalfPi, kHalfPi), rng.uniform(-kHalfPi, kHalfPi));
    const double half_side = rng.uniform(1e-3, kHalfPi);
    const Branch branch = make_branch(problem, center, half_side);
    CHECK(branch.upper <= P.size());
    if (P.size() == 1) {
      CHECK(branch.upper == 1);
    }

    const LowerEval lower = spcr_lower_bound(problem, branch);
    CHECK(lower.lower <= branch.upper);
    CHECK(problem.objective(lower.row, lower.t) == lower.lower);

    for (int s = 0; s < 15; ++s) {
      const Vec2 d = center + Vec2(rng.uniform(-half_side, half_side),
                                   rng.uniform(-half_side, half_side));
      CHECK(max_over_t(problem, exp_map_pos(d)) <= branch.upper);
      CHECK(max_over_t(problem, exp_map_neg(d)) <= branch.upper);
    }
  }
}

TEST_CASE("spcr bounds at the true row with exact data") {
  SplitMix64 rng(317);
  const std::size_t m = 15;
  std::vector<Vec3> P = random_cloud(rng, m);
  const Mat3 R = random_rotation(rng);
  const Vec3 t(rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1));
  std::vector<Vec3> Q;
  for (const Vec3& p : P) Q.push_back(R * p + t);

  const SpcrProblem problem(P, Q, Axis::X, 1e-6);
  Vec3 row = R.row(0).transpose();
  if (row.z() < 0.0) row = -row;
  const double gamma = std::acos(std::clamp(row.z(), -1.0, 1.0));
  const Vec2 head(row.x(), row.y());
  const Vec2 d = head.norm() > 0 ? Vec2(gamma * head.normalized()) : Vec2::Zero();

  const Branch branch = make_branch(problem, d, 0.0);
  CHECK(branch.upper == m);
  CHECK(spcr_lower_bound(problem, branch).lower == m);
}

TEST_CASE("spcr_solve_axis generate-and-verify") {
  SplitMix64 rng(331);
  const std::size_t m = 20;
  std::vector<Vec3> P = random_cloud(rng, m);
  const Mat3 R = random_rotation(rng);
  const Vec3 t(rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1));
  std::vector<Vec3> Q;
  for (const Vec3& p : P) Q.push_back(R * p + t);

  SUBCASE("full overlap") {
    const SpcrProblem problem(P, Q, Axis::X, 1e-5);
    const AxisSolution sol = spcr_solve_axis(problem);
    CHECK(sol.inliers == m);
    CHECK(sol.converged);
    CHECK(problem.objective(sol.row, sol.t) == m);
  }

  SUBCASE("partial overlap keeps the surviving points feasible") {
    std::vector<Vec3> Q_part(Q.begin(), Q.begin() + 12);  // rho = 0.6
    const SpcrProblem problem(P, Q_part, Axis::X, 1e-5);
    const AxisSolution sol = spcr_solve_axis(problem);
    CHECK(sol.inliers >= 12);
    CHECK(sol.converged);
  }

  SUBCASE("single source point saturates under a huge epsilon") {
    const SpcrProblem problem(std::vector<Vec3>{P[0]}, Q, Axis::X, 100.0);
    const AxisSolution sol = spcr_solve_axis(problem);
    CHECK(sol.inliers == 1);
  }
}

TEST_CASE("extract_candidates") {
  SplitMix64 rng(337);

  SUBCASE("identity solution on generic self-pairs") {
    const std::vector<Vec3> P = random_cloud(rng, 10);
    const SpcrProblem problem(P, P, Axis::X, 1e-9);
    AxisSolution sol;
    sol.row = Vec3::UnitX();
    sol.t = 0.0;
    sol.inliers = problem.objective(sol.row, sol.t);
    const CandidatePairSet pairs = extract_candidates(problem, sol);
    REQUIRE(pairs.size() == 10);
    for (const CandidatePair& c : pairs) {
      CHECK(c.source_index == c.target_index);
    }
  }

  SUBCASE("huge epsilon yields the full cross product") {
    const std::vector<Vec3> P = random_cloud(rng, 4);
    const std::vector<Vec3> Q = random_cloud(rng, 5);
    const SpcrProblem problem(P, Q, Axis::Z, 1e6);
    AxisSolution sol;
    sol.row = Vec3::UnitZ();
    sol.t = 0.0;
    const CandidatePairSet pairs = extract_candidates(problem, sol);
    CHECK(pairs.size() == 20);
  }

  SUBCASE("matches the double-loop filter and the inlier count") {
    for (int trial = 0; trial < 200; ++trial) {
      const std::vector<Vec3> P = random_cloud(rng, 1 + rng.below(8));
      const std::vector<Vec3> Q = random_cloud(rng, 1 + rng.below(8));
      const double eps = rng.uniform(0.05, 0.8);
      const SpcrProblem problem(P, Q, Axis::Y, eps);
      AxisSolution sol;
      sol.row = exp_map_pos(
          Vec2(rng.uniform(-kHalfPi, kHalfPi), rng.uniform(-kHalfPi, kHalfPi)));
      sol.t = rng.uniform(-1.0, 1.0);
      sol.inliers = problem.objective(sol.row, sol.t);

      const CandidatePairSet pairs = extract_candidates(problem, sol);
      std::set<std::pair<std::size_t, std::size_t>> got;
      std::set<std::size_t> sources;
      for (const CandidatePair& c : pairs) {
        got.insert({c.source_index, c.target_index});
        sources.insert(c.source_index);
      }
      CHECK(got.size() == pairs.size());  // no duplicates
      CHECK(sources.size() == sol.inliers);

      std::set<std::pair<std::size_t, std::size_t>> expected;
      for (std::size_t i = 0; i < P.size(); ++i) {
        for (std::size_t k = 0; k < Q.size(); ++k) {
          if (std::abs(sol.row.dot(P[i]) + sol.t - Q[k](1)) <= eps) {
            expected.insert({i, k});
          }
        }
      }
      CHECK(got == expected);
    }
  }
}
