// gavc: command-line front end for the Gaussian AVC laboratory.
//
// Subcommands:
//   rate    closed-form capacities for the scalar channel
//   figure  CSV sweeps (dbc region, dpc rates vs gamma, mimo221 rates vs lambda)
//   sim     rotated-codebook Monte Carlo
//
// Exit codes: 0 success, 2 parameter/validation error, 3 numeric failure,
// 4 infeasible request (e.g. empty rate region).

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "gavc/common.hpp"
#include "gavc/dpc_opt.hpp"
#include "gavc/mimo.hpp"
#include "gavc/rates.hpp"
#include "gavc/sim.hpp"

namespace {

using json = nlohmann::ordered_json;

std::string fmt12(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw gavc::ParameterError("cannot open output file: " + path);
  out << text;
}

std::string csv_join(const std::vector<std::string>& cells) {
  std::string line;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) line += ',';
    line += cells[i];
  }
  line += '\n';
  return line;
}

std::uint64_t default_seed() {
  if (const char* env = std::getenv("GAVC_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw gavc::ParameterError("GAVC_SEED must be a non-negative integer");
    }
  }
  return 12345;
}

json estimate_json(const gavc::sim::ErrorEstimate& e) {
  return json{{"trials", e.trials},
              {"errors", e.errors},
              {"rate_hat", e.rate_hat},
              {"wilson_lo", e.ci_lo},
              {"wilson_hi", e.ci_hi}};
}

// ---------------------------------------------------------------- rate ----

struct RateArgs {
  double gamma = 0.0, lambda = 0.0, sigma_w2 = 0.0;
  bool deterministic = false;
  std::string out;
};

int run_rate(const RateArgs& a) {
  gavc::rates::ScalarAvcSpec spec{a.gamma, a.lambda, a.sigma_w2};
  json doc;
  doc["command"] = "rate";
  doc["spec"] = {{"gamma", spec.gamma},
                 {"lambda", spec.lambda},
                 {"sigma_w2", spec.sigma_w2}};
  doc["c_r_bits"] = gavc::rates::randomized_capacity(spec);
  if (a.deterministic) doc["c_d_bits"] = gavc::rates::deterministic_capacity(spec);
  doc["formula"] = {{"c_r", "0.5*log2(1 + gamma/(lambda + sigma_w2))"},
                    {"c_d", "0 if gamma <= lambda else c_r"}};
  write_text(a.out, doc.dump(2) + "\n");
  return 0;
}

// -------------------------------------------------------------- figures ----

struct FigureArgs {
  std::string name;
  std::string out;
  // dbc
  double gamma = 6.0, lambda = 1.0, sigma1_2 = 0.1, sigma2_2 = 5.0;
  int alpha_steps = 50;
  // dpc
  double sigma_t2 = 2.0, sigma_w2 = 1.0;
  double gamma_min = 0.2, gamma_max = 8.0, gamma_step = 0.05;
  // mimo221
  double nu1 = 1.0, nu2 = 3.0;
  double lambda_min = 0.0, lambda_max = 10.0, lambda_step = 0.1;
};

int run_figure_dbc(const FigureArgs& a) {
  gavc::rates::BroadcastSpec spec{a.gamma, a.lambda, a.sigma1_2, a.sigma2_2};
  spec.validate();
  gavc::require(a.alpha_steps >= 2, "figure dbc: --alpha-steps must be >= 2");
  std::string csv = csv_join({"alpha", "r1_bits", "r2_bits", "branch"});
  if (spec.lambda >= spec.gamma) {
    write_text(a.out.empty() ? "dbc.csv" : a.out, csv);
    throw gavc::InfeasibleError("broadcast region is empty (lambda >= gamma)");
  }
  const double amin = spec.lambda / spec.gamma;
  std::vector<double> grid;
  for (int i = 1; i <= a.alpha_steps; ++i)
    grid.push_back(i == a.alpha_steps ? 1.0
                                      : amin + i * (1.0 - amin) / a.alpha_steps);
  auto region = gavc::rates::broadcast_region(spec, grid);
  for (const auto& p : region.points)
    csv += csv_join({fmt12(p.alpha), fmt12(p.r1), fmt12(p.r2), "curve"});
  for (const auto& p : region.timeshare)
    csv += csv_join({fmt12(p.alpha), fmt12(p.r1), fmt12(p.r2), "timeshare"});
  write_text(a.out.empty() ? "dbc.csv" : a.out, csv);
  return 0;
}

int run_figure_dpc(const FigureArgs& a) {
  gavc::require(a.gamma_step > 0.0 && a.gamma_max >= a.gamma_min,
                "figure dpc: bad gamma sweep");
  std::string csv =
      csv_join({"gamma", "achievable_bits", "outer_bound_bits", "avc_cd_bits"});
  for (double g = a.gamma_min; g <= a.gamma_max + 1e-12; g += a.gamma_step) {
    gavc::rates::DpcSpec spec{g, a.lambda, a.sigma_t2, a.sigma_w2};
    auto opt = gavc::dpc::optimize_dpc(spec);
    const double ach = opt.feasible ? std::max(0.0, opt.best_rate) : 0.0;
    const double outer = gavc::rates::dpc_outer_bound(spec);
    const double cd = gavc::rates::deterministic_capacity(
        {spec.gamma, spec.lambda, spec.sigma_w2});
    csv += csv_join({fmt12(g), fmt12(ach), fmt12(outer), fmt12(cd)});
  }
  write_text(a.out.empty() ? "dpc.csv" : a.out, csv);
  return 0;
}

int run_figure_mimo221(const FigureArgs& a) {
  gavc::require(a.lambda_step > 0.0 && a.lambda_max >= a.lambda_min,
                "figure mimo221: bad lambda sweep");
  std::string csv = csv_join({"lambda", "full_rank_bits", "maxmin_bits",
                              "upper_bound_bits", "wfillnew_bits", "is_capacity",
                              "kase"});
  for (double l = a.lambda_min; l <= a.lambda_max + 1e-12; l += a.lambda_step) {
    Eigen::VectorXd nu(2);
    nu << a.nu1, a.nu2;
    gavc::mimo::MimoSpec spec{nu, a.gamma, l};
    const auto mm = gavc::mimo::maxmin_rate_221(spec);
    csv += csv_join({fmt12(l), fmt12(gavc::mimo::full_rank_rate(spec)),
                     fmt12(mm.rate), fmt12(gavc::mimo::upper_bound_rate(spec)),
                     fmt12(gavc::mimo::rate_wfillnew(spec)),
                     mm.is_capacity ? "1" : "0", std::to_string(mm.kase)});
  }
  write_text(a.out.empty() ? "mimo221.csv" : a.out, csv);
  return 0;
}

// ------------------------------------------------------------------ sim ----

struct SimArgs {
  int n = 0;
  double gamma = 1.0, lambda = 1.0, sigma_w2 = 1.0;
  double rate_frac = 0.5;
  std::int64_t big_n = 0;
  std::int64_t k = 0;
  std::string k_rule = "nlogn";
  double k_c = 1.0;
  std::string jammer = "gaussian";
  std::string jam_file;
  std::int64_t trials = 1000;
  std::uint64_t seed = 0;
  bool seed_given = false;
  int workers = 1;
  std::int64_t block_size = 256;
  int sample_messages = 8;
  std::string out;
};

gavc::rates::KeyRule parse_rule(const std::string& rule) {
  if (rule == "nlogn") return gavc::rates::KeyRule::NLogN;
  if (rule == "n2") return gavc::rates::KeyRule::NSquared;
  if (rule == "cn") return gavc::rates::KeyRule::LinearC;
  if (rule == "2n") return gavc::rates::KeyRule::Exp2N;
  throw gavc::ParameterError("unknown key rule: " + rule);
}

int run_sim(const SimArgs& a) {
  gavc::rates::ScalarAvcSpec spec{a.gamma, a.lambda, a.sigma_w2};
  spec.validate();
  gavc::require(a.n >= 1 && a.n <= 1024, "sim: n must lie in [1, 1024]");
  gavc::require(a.trials >= 1 && a.trials <= 10000000,
                "sim: trials must lie in [1, 1e7]");
  gavc::require(a.workers >= 1 && a.workers <= 64, "sim: workers must lie in [1, 64]");

  std::int64_t k = a.k;
  std::string rule_used = "explicit";
  if (k <= 0) {
    k = gavc::rates::key_size_schedule(a.n, parse_rule(a.k_rule), a.k_c);
    rule_used = a.k_rule;
  }
  gavc::require(k >= 1 && k <= 65536, "sim: key count must lie in [1, 65536]");
  gavc::require(a.big_n <= 4096, "sim: big_n must be <= 4096");

  const std::uint64_t seed = a.seed_given ? a.seed : default_seed();
  gavc::core::SeededRng root(seed, 0);

  gavc::sim::ScenarioConfig sc{spec, a.n, a.rate_frac, a.big_n, k};
  gavc::sim::Scenario scen = gavc::sim::make_scenario(sc, root);

  gavc::sim::JammerStrategy strategy;
  if (a.jammer == "none")
    strategy = gavc::sim::JammerStrategy::none();
  else if (a.jammer == "gaussian")
    strategy = gavc::sim::JammerStrategy::gaussian(spec.lambda);
  else if (a.jammer == "sphere")
    strategy = gavc::sim::JammerStrategy::sphere(spec.lambda);
  else if (a.jammer == "symmetrize")
    strategy = gavc::sim::JammerStrategy::symmetrize(spec.lambda);
  else if (a.jammer == "orthogonal")
    strategy = gavc::sim::JammerStrategy::orthogonal(spec.lambda);
  else if (a.jammer == "fixed") {
    gavc::require(!a.jam_file.empty(), "sim: --jammer fixed needs --jam-file");
    std::ifstream in(a.jam_file);
    if (!in) throw gavc::ParameterError("cannot open jam file: " + a.jam_file);
    json arr = json::parse(in);
    gavc::require(arr.is_array() && static_cast<int>(arr.size()) == a.n,
                  "sim: jam file must be a JSON array of length n");
    Eigen::VectorXd s(a.n);
    for (int i = 0; i < a.n; ++i) s[i] = arr[i].get<double>();
    strategy = gavc::sim::JammerStrategy::fixed_vector(std::move(s), spec.lambda);
  } else {
    throw gavc::ParameterError("unknown jammer: " + a.jammer);
  }

  gavc::sim::TrialConfig tc;
  tc.trials = a.trials;
  tc.workers = a.workers;
  tc.block_size = a.block_size;
  tc.sample_messages = a.sample_messages;
  const auto report =
      gavc::sim::run_trials(scen.codebook, scen.keys, strategy, spec.sigma_w2, tc, root);

  json doc;
  doc["command"] = "sim";
  doc["config"] = {{"n", a.n},
                   {"big_n", scen.big_n},
                   {"k", k},
                   {"k_rule", rule_used},
                   {"rate_frac", a.rate_frac},
                   {"realized_rate_bits", scen.realized_rate},
                   {"gamma", spec.gamma},
                   {"lambda", spec.lambda},
                   {"sigma_w2", spec.sigma_w2},
                   {"jammer", a.jammer},
                   {"trials", a.trials},
                   {"seed", seed},
                   {"seed_source", a.seed_given ? "flag"
                                   : std::getenv("GAVC_SEED") ? "env"
                                                              : "default"},
                   {"workers", a.workers},
                   {"block_size", a.block_size},
                   {"sample_messages", a.sample_messages}};
  doc["channel"] = {{"c_r_bits", gavc::rates::randomized_capacity(spec)},
                    {"c_d_bits", gavc::rates::deterministic_capacity(spec)}};
  json results;
  results["average"] = estimate_json(report.average);
  json worst = estimate_json(report.worst_message);
  worst["message"] = report.worst_message_index;
  results["worst_message"] = worst;
  results["max_jam_energy_ratio"] = report.max_jam_energy_ratio;
  results["messages"] = {{"ids", report.message_ids},
                         {"trials", report.message_trials},
                         {"errors", report.message_errors}};
  doc["results"] = results;
  json notes = json::array();
  if (spec.lambda >= spec.gamma && k == 1)
    notes.push_back(
        "symmetrizable regime: lambda >= gamma with a deterministic code (K = 1)");
  doc["notes"] = notes;
  write_text(a.out, doc.dump(2) + "\n");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gaussian arbitrarily varying channel laboratory"};
  app.require_subcommand(1);

  RateArgs ra;
  auto* rate = app.add_subcommand("rate", "closed-form capacities");
  rate->add_option("--gamma", ra.gamma, "transmitter power")->required();
  rate->add_option("--lambda", ra.lambda, "jammer power")->required();
  rate->add_option("--sigma-w2", ra.sigma_w2, "noise variance")->required();
  rate->add_flag("--deterministic", ra.deterministic,
                 "also report the deterministic-code capacity");
  rate->add_option("--out", ra.out, "output path (default stdout)");

  FigureArgs fa;
  auto* fig = app.add_subcommand("figure", "CSV figure data");
  fig->add_option("name", fa.name, "one of: dbc, dpc, mimo221")->required();
  fig->add_option("--out", fa.out, "output CSV path (default <name>.csv)");
  auto* fig_gamma = fig->add_option(
      "--gamma", fa.gamma, "transmitter power (default: dbc 6, mimo221 4)");
  auto* fig_lambda = fig->add_option(
      "--lambda", fa.lambda, "jammer power (default: dbc 1, dpc 5)");
  fig->add_option("--sigma1-2", fa.sigma1_2, "strong user noise (dbc)");
  fig->add_option("--sigma2-2", fa.sigma2_2, "weak user noise (dbc)");
  fig->add_option("--alpha-steps", fa.alpha_steps, "grid points (dbc)");
  fig->add_option("--sigma-t2", fa.sigma_t2, "interference power (dpc)");
  fig->add_option("--sigma-w2", fa.sigma_w2, "noise variance (dpc)");
  fig->add_option("--gamma-min", fa.gamma_min, "sweep start (dpc)");
  fig->add_option("--gamma-max", fa.gamma_max, "sweep end (dpc)");
  fig->add_option("--gamma-step", fa.gamma_step, "sweep step (dpc)");
  fig->add_option("--nu1", fa.nu1, "noise variance 1 (mimo221)");
  fig->add_option("--nu2", fa.nu2, "noise variance 2 (mimo221)");
  fig->add_option("--lambda-min", fa.lambda_min, "sweep start (mimo221)");
  fig->add_option("--lambda-max", fa.lambda_max, "sweep end (mimo221)");
  fig->add_option("--lambda-step", fa.lambda_step, "sweep step (mimo221)");

  SimArgs sa;
  auto* sim = app.add_subcommand("sim", "rotated-codebook Monte Carlo");
  sim->add_option("--n", sa.n, "blocklength (<= 1024)")->required();
  sim->add_option("--gamma", sa.gamma, "transmitter power");
  sim->add_option("--lambda", sa.lambda, "jammer power");
  sim->add_option("--sigma-w2", sa.sigma_w2, "noise variance");
  sim->add_option("--rate-frac", sa.rate_frac, "fraction of C_r (sets big_n)");
  sim->add_option("--big-n", sa.big_n, "codebook size override (<= 4096)");
  sim->add_option("--k", sa.k, "key count override (<= 65536)");
  sim->add_option("--k-rule", sa.k_rule, "key schedule: nlogn, n2, cn, 2n");
  sim->add_option("--k-c", sa.k_c, "constant for the cn rule");
  sim->add_option("--jammer", sa.jammer,
                  "none, gaussian, sphere, fixed, symmetrize, orthogonal");
  sim->add_option("--jam-file", sa.jam_file, "JSON vector for --jammer fixed");
  sim->add_option("--trials", sa.trials, "Monte Carlo trials");
  auto* seed_opt = sim->add_option("--seed", sa.seed, "RNG seed (default: GAVC_SEED or 12345)");
  sim->add_option("--workers", sa.workers, "worker threads (does not affect results)");
  sim->add_option("--block-size", sa.block_size, "trials per RNG block");
  sim->add_option("--sample-messages", sa.sample_messages,
                  "message sample size when big_n > 1024");
  sim->add_option("--out", sa.out, "output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (rate->parsed()) return run_rate(ra);
    if (fig->parsed()) {
      if (fig_gamma->count() == 0) fa.gamma = (fa.name == "mimo221") ? 4.0 : 6.0;
      if (fig_lambda->count() == 0) fa.lambda = (fa.name == "dpc") ? 5.0 : 1.0;
      if (fa.name == "dbc") return run_figure_dbc(fa);
      if (fa.name == "dpc") return run_figure_dpc(fa);
      if (fa.name == "mimo221") return run_figure_mimo221(fa);
      throw gavc::ParameterError("unknown figure: " + fa.name);
    }
    if (sim->parsed()) {
      sa.seed_given = seed_opt->count() > 0;
      return run_sim(sa);
    }
  } catch (const gavc::InfeasibleError& e) {
    std::cerr << "infeasible: " << e.what() << "\n";
    return 4;
  } catch (const std::invalid_argument& e) {
    std::cerr << "parameter error: " << e.what() << "\n";
    return 2;
  } catch (const std::runtime_error& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
