#include "rpreg/experiments.hpp"
#include "rpreg/io.hpp"
#include "rpreg/registration.hpp"
#include "rpreg/synthetic.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <iostream>
#include <string>

namespace {

using namespace rpreg;
using nlohmann::json;

Axis parse_axis(const std::string& name) {
  if (name == "X" || name == "x") return Axis::X;
  if (name == "Y" || name == "y") return Axis::Y;
  if (name == "Z" || name == "z") return Axis::Z;
  throw CLI::ValidationError("--first-axis", "expected X, Y or Z");
}

void emit_result(const RegistrationResult& result, const std::string& output) {
  if (output.empty()) {
    std::cout << result_to_json_string(result);
  } else {
    save_result_json(output, result);
    std::printf("consensus %zu certified=%d defect=%.3g -> %s\n",
                result.consensus, result.certified ? 1 : 0,
                result.orthogonality_defect, output.c_str());
  }
}

struct RegisterArgs {
  std::string input;
  double epsilon = 0.0;
  bool refine = false;
  std::string output;
};

struct SpcrArgs {
  std::string source;
  std::string target;
  double epsilon = 0.0;
  std::string first_axis = "X";
  bool refine = false;
  std::string output;
};

struct SynthArgs {
  std::size_t n = 100;
  double eta = 0.0;
  double sigma = 0.0;
  double cube_half_width = 100.0;
  std::uint64_t seed = 0;
  std::string output;
  std::string gt;
};

struct SynthSpcrArgs {
  std::size_t m = 100;
  double rho = 0.6;
  double sigma = 0.001;
  double cube_half_width = 1.0;
  std::uint64_t seed = 0;
  std::string cloud;
  std::size_t builtin_points = 2000;
  std::string source_out;
  std::string target_out;
  std::string gt;
};

struct EvalArgs {
  std::string result;
  std::string gt;
};

int run_register(const RegisterArgs& args) {
  const CorrespondenceSet set = load_correspondences(args.input);
  RegistrationConfig config;
  config.refine = args.refine;
  const RegistrationResult result =
      register_correspondences(set, args.epsilon, config);
  emit_result(result, args.output);
  return 0;
}

int run_spcr(const SpcrArgs& args) {
  const std::vector<Vec3> P = load_cloud(args.source);
  const std::vector<Vec3> Q = load_cloud(args.target);
  RegistrationConfig config;
  config.refine = args.refine;
  config.spcr_first_axis = parse_axis(args.first_axis);
  const RegistrationResult result = register_spcr(P, Q, args.epsilon, config);
  emit_result(result, args.output);
  return 0;
}

int run_synth(const SynthArgs& args) {
  SynthConfig config;
  config.n = args.n;
  config.outlier_rate = args.eta;
  config.noise_sigma = args.sigma;
  config.cube_half_width = args.cube_half_width;
  config.seed = args.seed;
  const SynthData data = synth_correspondences(config);
  save_correspondences(args.output, data.correspondences);
  if (!args.gt.empty()) {
    save_transform_json(args.gt, data.ground_truth);
  }
  std::printf("wrote %zu correspondences to %s (suggested epsilon %.9g)\n",
              data.correspondences.size(), args.output.c_str(),
              default_epsilon(args.sigma, args.cube_half_width));
  return 0;
}

int run_synth_spcr(const SynthSpcrArgs& args) {
  SpcrSynthConfig config;
  config.m = args.m;
  config.overlap_rate = args.rho;
  config.noise_sigma = args.sigma;
  config.cube_half_width = args.cube_half_width;
  config.seed = args.seed;
  config.cloud_path = args.cloud;
  config.builtin_points = args.builtin_points;
  const SpcrSynthData data = synth_spcr(config);
  save_cloud_xyz(args.source_out, data.source);
  save_cloud_xyz(args.target_out, data.target);
  if (!args.gt.empty()) {
    save_transform_json(args.gt, data.ground_truth);
  }
  std::printf("wrote %zu source / %zu target points\n", data.source.size(),
              data.target.size());
  return 0;
}

int run_eval(const EvalArgs& args) {
  const RigidTransform est = load_transform_json(args.result);
  const RigidTransform gt = load_transform_json(args.gt);
  json out;
  out["er_deg"] = rotation_error_deg(gt.rotation, est.rotation);
  out["et"] = translation_error(gt.translation, est.translation);
  std::cout << out.dump(2) << "\n";
  return 0;
}

int run_bench(const std::string& config_path) {
  const BenchConfig config = load_bench_config(config_path);
  const std::vector<TrialRecord> records = rpreg::run_bench(config);
  write_trials_csv(config.output, records);

  json summary = json::array();
  for (double eta : config.etas) {
    std::vector<TrialRecord> slice;
    for (const TrialRecord& r : records) {
      if (r.eta == eta) slice.push_back(r);
    }
    const TrialAggregate agg = aggregate_trials(slice, config.thresholds);
    json row;
    row["eta"] = eta;
    row["trials"] = agg.trials;
    row["mean_er_deg"] = agg.mean_er_deg;
    row["mean_et"] = agg.mean_et;
    row["mean_runtime_ms"] = agg.mean_runtime_ms;
    row["success_rate"] = agg.success_rate;
    summary.push_back(row);
  }
  std::cout << summary.dump(2) << "\n";
  std::printf("wrote %zu trial rows to %s\n", records.size(),
              config.output.c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Residual-projection point cloud registration"};
  app.require_subcommand(1);

  RegisterArgs reg_args;
  CLI::App* reg = app.add_subcommand(
      "register", "Solve a correspondence-based registration problem");
  reg->add_option("--input", reg_args.input, "correspondence file")->required();
  reg->add_option("--epsilon", reg_args.epsilon, "inlier threshold")->required();
  reg->add_flag("--refine", reg_args.refine, "least-squares refinement on inliers");
  reg->add_option("--output", reg_args.output, "result JSON path");

  SpcrArgs spcr_args;
  CLI::App* spcr = app.add_subcommand(
      "spcr", "Register two clouds without correspondences");
  spcr->add_option("--source", spcr_args.source, "source cloud (.xyz/.ply)")->required();
  spcr->add_option("--target", spcr_args.target, "target cloud (.xyz/.ply)")->required();
  spcr->add_option("--epsilon", spcr_args.epsilon, "inlier threshold")->required();
  spcr->add_option("--first-axis", spcr_args.first_axis,
                   "axis solved correspondence-free (X, Y or Z)");
  spcr->add_flag("--refine", spcr_args.refine, "least-squares refinement on inliers");
  spcr->add_option("--output", spcr_args.output, "result JSON path");

  SynthArgs synth_args;
  CLI::App* synth = app.add_subcommand(
      "synth", "Generate planted-truth correspondences");
  synth->add_option("--n", synth_args.n, "correspondence count")->required();
  synth->add_option("--eta", synth_args.eta, "outlier rate in [0,1)")->required();
  synth->add_option("--sigma", synth_args.sigma, "noise stddev")->required();
  synth->add_option("--seed", synth_args.seed, "RNG seed")->required();
  synth->add_option("--cube-half-width", synth_args.cube_half_width, "cube half width");
  synth->add_option("--output", synth_args.output, "correspondence file")->required();
  synth->add_option("--gt", synth_args.gt, "ground-truth JSON path");

  SynthSpcrArgs sspcr_args;
  CLI::App* sspcr = app.add_subcommand(
      "synth-spcr", "Generate a planted-truth partial-overlap cloud pair");
  sspcr->add_option("--m", sspcr_args.m, "downsampled source size");
  sspcr->add_option("--rho", sspcr_args.rho, "overlap rate in (0,1]");
  sspcr->add_option("--sigma", sspcr_args.sigma, "source noise stddev");
  sspcr->add_option("--cube-half-width", sspcr_args.cube_half_width, "cube half width");
  sspcr->add_option("--seed", sspcr_args.seed, "RNG seed")->required();
  sspcr->add_option("--cloud", sspcr_args.cloud,
                    "base cloud to downsample (default: built-in blob)");
  sspcr->add_option("--builtin-points", sspcr_args.builtin_points,
                    "built-in cloud size");
  sspcr->add_option("--source-out", sspcr_args.source_out, "source .xyz path")->required();
  sspcr->add_option("--target-out", sspcr_args.target_out, "target .xyz path")->required();
  sspcr->add_option("--gt", sspcr_args.gt, "ground-truth JSON path");

  EvalArgs eval_args;
  CLI::App* eval = app.add_subcommand(
      "eval", "Rotation/translation error of a result against a ground truth");
  eval->add_option("--result", eval_args.result, "result JSON")->required();
  eval->add_option("--gt", eval_args.gt, "ground-truth JSON")->required();

  std::string bench_config;
  CLI::App* bench = app.add_subcommand("bench", "Run repeated synthetic trials");
  bench->add_option("--config", bench_config, "bench config JSON")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (reg->parsed()) return run_register(reg_args);
    if (spcr->parsed()) return run_spcr(spcr_args);
    if (synth->parsed()) return run_synth(synth_args);
    if (sspcr->parsed()) return run_synth_spcr(sspcr_args);
    if (eval->parsed()) return run_eval(eval_args);
    if (bench->parsed()) return run_bench(bench_config);
  } catch (const RegistrationError& e) {
    std::cerr << "registration failed: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
