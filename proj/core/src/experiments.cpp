#include "rpreg/experiments.hpp"

#include "rpreg/io.hpp"

#include <json.hpp>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <future>
#include <stdexcept>

namespace rpreg {

namespace {

using Clock = std::chrono::steady_clock;
using nlohmann::json;

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

}  // namespace

double default_epsilon(double noise_sigma, double cube_half_width) {
  return noise_sigma > 0.0 ? 3.0 * noise_sigma : 1e-6 * cube_half_width;
}

TrialRecord run_synth_trial(const SynthConfig& synth, double epsilon,
                            const RegistrationConfig& config,
                            std::size_t trial_index) {
  const SynthData data = synth_correspondences(synth);
  const auto start = Clock::now();
  const RegistrationResult result =
      register_correspondences(data.correspondences, epsilon, config);
  TrialRecord record;
  record.runtime_ms = elapsed_ms(start);
  record.trial = trial_index;
  record.n = synth.n;
  record.eta = synth.outlier_rate;
  record.sigma = synth.noise_sigma;
  record.er_deg =
      rotation_error_deg(data.ground_truth.rotation, result.transform.rotation);
  record.et = translation_error(data.ground_truth.translation,
                                result.transform.translation);
  record.consensus = result.consensus;
  record.certified = result.certified;
  return record;
}

TrialRecord run_spcr_trial(const SpcrSynthConfig& synth, double epsilon,
                           const RegistrationConfig& config,
                           std::size_t trial_index) {
  const SpcrSynthData data = synth_spcr(synth);
  const auto start = Clock::now();
  const RegistrationResult result =
      register_spcr(data.source, data.target, epsilon, config);
  TrialRecord record;
  record.runtime_ms = elapsed_ms(start);
  record.trial = trial_index;
  record.n = synth.m;
  record.eta = 1.0 - synth.overlap_rate;
  record.sigma = synth.noise_sigma;
  record.er_deg =
      rotation_error_deg(data.ground_truth.rotation, result.transform.rotation);
  record.et = translation_error(data.ground_truth.translation,
                                result.transform.translation);
  record.consensus = result.consensus;
  record.certified = result.certified;
  return record;
}

TrialAggregate aggregate_trials(const std::vector<TrialRecord>& records,
                                const SuccessThresholds& thresholds) {
  TrialAggregate agg;
  agg.trials = records.size();
  if (records.empty()) {
    return agg;
  }
  std::size_t successes = 0;
  for (const TrialRecord& r : records) {
    agg.mean_er_deg += r.er_deg;
    agg.mean_et += r.et;
    agg.mean_runtime_ms += r.runtime_ms;
    if (r.er_deg <= thresholds.er_deg && r.et <= thresholds.et) {
      ++successes;
    }
  }
  const double n = static_cast<double>(records.size());
  agg.mean_er_deg /= n;
  agg.mean_et /= n;
  agg.mean_runtime_ms /= n;
  agg.success_rate = static_cast<double>(successes) / n;
  return agg;
}

BenchConfig load_bench_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("cannot open " + path.string());
  }
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw IoError(path.string() + ": " + e.what());
  }

  BenchConfig cfg;
  cfg.mode = j.value("mode", cfg.mode);
  if (cfg.mode != "correspondence" && cfg.mode != "spcr") {
    throw IoError(path.string() + ": mode must be 'correspondence' or 'spcr'");
  }
  cfg.trials = j.value("trials", cfg.trials);
  cfg.n = j.value("n", cfg.n);
  if (j.contains("eta")) {
    cfg.etas.clear();
    if (j["eta"].is_array()) {
      for (const auto& e : j["eta"]) cfg.etas.push_back(e.get<double>());
    } else {
      cfg.etas.push_back(j["eta"].get<double>());
    }
  }
  cfg.sigma = j.value("sigma", cfg.sigma);
  cfg.cube_half_width = j.value("cube_half_width", cfg.cube_half_width);
  if (j.contains("epsilon") && !j["epsilon"].is_null()) {
    cfg.epsilon = j["epsilon"].get<double>();
  }
  cfg.seed = j.value("seed", cfg.seed);
  cfg.thresholds.er_deg = j.value("success_er_deg", cfg.thresholds.er_deg);
  cfg.thresholds.et = j.value("success_et", 0.01 * cfg.cube_half_width);
  cfg.parallel = j.value("parallel", cfg.parallel);
  cfg.refine = j.value("refine", cfg.refine);
  cfg.cloud_path = j.value("cloud", cfg.cloud_path);
  cfg.output = j.value("output", cfg.output);
  return cfg;
}

std::vector<TrialRecord> run_bench(const BenchConfig& config) {
  RegistrationConfig reg_config;
  reg_config.refine = config.refine;
  const double epsilon = config.epsilon.value_or(
      default_epsilon(config.sigma, config.cube_half_width));

  struct Job {
    double eta = 0.0;
    std::size_t trial = 0;
    std::uint64_t seed = 0;
  };
  std::vector<Job> jobs;
  SplitMix64 master(config.seed);
  for (double eta : config.etas) {
    for (std::size_t t = 0; t < config.trials; ++t) {
      jobs.push_back({eta, t, master.next()});
    }
  }

  auto run_job = [&](const Job& job) -> TrialRecord {
    if (config.mode == "spcr") {
      SpcrSynthConfig synth;
      synth.m = config.n;
      synth.overlap_rate = 1.0 - job.eta;
      synth.noise_sigma = config.sigma;
      synth.cube_half_width = config.cube_half_width;
      synth.seed = job.seed;
      synth.cloud_path = config.cloud_path;
      return run_spcr_trial(synth, epsilon, reg_config, job.trial);
    }
    SynthConfig synth;
    synth.n = config.n;
    synth.cube_half_width = config.cube_half_width;
    synth.noise_sigma = config.sigma;
    synth.outlier_rate = job.eta;
    synth.seed = job.seed;
    return run_synth_trial(synth, epsilon, reg_config, job.trial);
  };

  std::vector<TrialRecord> records(jobs.size());
  if (config.parallel && jobs.size() > 1) {
    std::vector<std::future<TrialRecord>> futures;
    futures.reserve(jobs.size());
    for (const Job& job : jobs) {
      futures.push_back(std::async(std::launch::async, run_job, job));
    }
    for (std::size_t i = 0; i < futures.size(); ++i) {
      records[i] = futures[i].get();
    }
  } else {
    for (std::size_t i = 0; i < jobs.size(); ++i) {
      records[i] = run_job(jobs[i]);
    }
  }
  return records;
}

void write_trials_csv(const std::filesystem::path& path,
                      const std::vector<TrialRecord>& records) {
  std::ofstream out(path);
  if (!out) {
    throw IoError("cannot write " + path.string());
  }
  out << "trial,n,eta,sigma,er_deg,et,consensus,certified,runtime_ms\n";
  char buf[256];
  for (const TrialRecord& r : records) {
    std::snprintf(buf, sizeof(buf), "%zu,%zu,%.9g,%.9g,%.9g,%.9g,%zu,%d,%.3f\n",
                  r.trial, r.n, r.eta, r.sigma, r.er_deg, r.et, r.consensus,
                  r.certified ? 1 : 0, r.runtime_ms);
    out << buf;
  }
}

}  // namespace rpreg
