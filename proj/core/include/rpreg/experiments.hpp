#pragma once

#include "rpreg/registration.hpp"
#include "rpreg/synthetic.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace rpreg {

/// Threshold rule for the inlier band: 3*sigma for noisy data, a small
/// fraction of the cube for exact data.
double default_epsilon(double noise_sigma, double cube_half_width);

struct TrialRecord {
  std::size_t trial = 0;
  std::size_t n = 0;
  double eta = 0.0;
  double sigma = 0.0;
  double er_deg = 0.0;
  double et = 0.0;
  std::size_t consensus = 0;
  bool certified = false;
  double runtime_ms = 0.0;
};

struct SuccessThresholds {
  double er_deg = 1.0;
  double et = 1.0;
};

struct TrialAggregate {
  std::size_t trials = 0;
  double mean_er_deg = 0.0;
  double mean_et = 0.0;
  double mean_runtime_ms = 0.0;
  double success_rate = 0.0;
};

/// One planted-truth correspondence trial: generate, register, score.
TrialRecord run_synth_trial(const SynthConfig& synth, double epsilon,
                            const RegistrationConfig& config,
                            std::size_t trial_index = 0);

/// One planted-truth SPCR trial (eta column reports 1 - overlap_rate).
TrialRecord run_spcr_trial(const SpcrSynthConfig& synth, double epsilon,
                           const RegistrationConfig& config,
                           std::size_t trial_index = 0);

TrialAggregate aggregate_trials(const std::vector<TrialRecord>& records,
                                const SuccessThresholds& thresholds);

struct BenchConfig {
  std::string mode = "correspondence";  // or "spcr"
  std::size_t trials = 10;
  std::size_t n = 2000;  // correspondence count, or m for spcr mode
  std::vector<double> etas{0.5};  // outlier rates, or 1-rho values for spcr
  double sigma = 0.5;
  double cube_half_width = 100.0;
  std::optional<double> epsilon;  // default: default_epsilon(sigma, cube)
  std::uint64_t seed = 1;
  SuccessThresholds thresholds;
  bool parallel = false;
  bool refine = false;
  std::string cloud_path;  // spcr mode only; empty = builtin cloud
  std::string output = "bench.csv";
};

BenchConfig load_bench_config(const std::filesystem::path& path);

/// Runs trials for every eta; per-trial seeds are drawn from a master
/// generator so results do not depend on execution order.
std::vector<TrialRecord> run_bench(const BenchConfig& config);

/// CSV with header trial,n,eta,sigma,er_deg,et,consensus,certified,runtime_ms.
void write_trials_csv(const std::filesystem::path& path,
                      const std::vector<TrialRecord>& records);

}  // namespace rpreg
