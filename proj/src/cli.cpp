// Copyright 2026 The chanmet Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "chanmet/cli.hpp"

#include <chrono>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "chanmet/estim.hpp"
#include "chanmet/metrics.hpp"
#include "chanmet/output.hpp"
#include "chanmet/version.hpp"

namespace chanmet {

namespace {

using nlohmann::json;

struct FamilyArgs {
  std::string family;
  std::string params = "{}";
  std::string family_file;
  std::string channel_file;
  std::string tangent_file;
  double theta = 0.0;
};

struct ResolvedPair {
  Channel phi;
  ChannelTangent dphi;
  std::optional<ChannelFamily> family;
  double theta = 0.0;
};

void add_family_flags(CLI::App* cmd, FamilyArgs* args) {
  cmd->add_option("--family", args->family, "catalog family name");
  cmd->add_option("--params", args->params, "family parameters as inline JSON");
  cmd->add_option("--theta", args->theta, "parameter value");
  cmd->add_option("--family-file", args->family_file,
                  "JSON spec file {name, params, theta}");
  cmd->add_option("--channel", args->channel_file,
                  "explicit Choi file {choi, d_in, d_out}");
  cmd->add_option("--tangent", args->tangent_file,
                  "explicit tangent Choi file {choi, d_in, d_out}");
}

json family_config(const FamilyArgs& args) {
  json cfg = json::object();
  if (!args.family.empty()) cfg["family"] = args.family;
  if (args.params != "{}") cfg["params_json"] = args.params;
  if (!args.family_file.empty()) cfg["family_file"] = args.family_file;
  if (!args.channel_file.empty()) cfg["channel_file"] = args.channel_file;
  if (!args.tangent_file.empty()) cfg["tangent_file"] = args.tangent_file;
  cfg["theta"] = args.theta;
  return cfg;
}

json parse_params(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw config_error(std::string("--params is not valid JSON: ") + e.what());
  }
}

ResolvedPair resolve_pair(const FamilyArgs& args) {
  if (!args.channel_file.empty() || !args.tangent_file.empty()) {
    if (args.channel_file.empty() || args.tangent_file.empty()) {
      throw config_error("--channel and --tangent must be given together");
    }
    Channel phi = channel_from_json(read_json_file(args.channel_file));
    ChannelTangent dphi = tangent_from_json(read_json_file(args.tangent_file));
    if (phi.d_in() != dphi.d_in() || phi.d_out() != dphi.d_out()) {
      throw config_error("channel and tangent dimensions do not match");
    }
    return ResolvedPair{std::move(phi), std::move(dphi), std::nullopt, args.theta};
  }
  if (!args.family_file.empty()) {
    FamilySpec spec = family_from_json(read_json_file(args.family_file));
    Channel phi = spec.family.at(spec.theta);
    ChannelTangent dphi = spec.family.tangent_at(spec.theta);
    return ResolvedPair{std::move(phi), std::move(dphi), std::move(spec.family),
                        spec.theta};
  }
  if (args.family.empty()) {
    throw config_error("give --family, --family-file, or --channel/--tangent");
  }
  ChannelFamily fam = family_catalog(args.family, parse_params(args.params));
  Channel phi = fam.at(args.theta);
  ChannelTangent dphi = fam.tangent_at(args.theta);
  return ResolvedPair{std::move(phi), std::move(dphi), std::move(fam), args.theta};
}

ChannelFamily resolve_family(const FamilyArgs& args, double* theta) {
  if (!args.family_file.empty()) {
    FamilySpec spec = family_from_json(read_json_file(args.family_file));
    *theta = spec.theta;
    return std::move(spec.family);
  }
  if (args.family.empty()) {
    throw config_error("give --family or --family-file");
  }
  *theta = args.theta;
  return family_catalog(args.family, parse_params(args.params));
}

json probe_to_json(const Vector& psi) {
  json out = json::array();
  for (Eigen::Index i = 0; i < psi.size(); ++i) {
    out.push_back({psi(i).real(), psi(i).imag()});
  }
  return out;
}

json metric_report_to_json(const MetricReport& rep) {
  json out{{"value", rep.value},
           {"iterations", rep.iterations},
           {"converged", rep.converged},
           {"restarts_used", rep.restarts_used}};
  switch (rep.divergence) {
    case Divergence::none: out["divergence"] = "none"; break;
    case Divergence::support_escape: out["divergence"] = "support_escape"; break;
    case Divergence::eps_zero: out["divergence"] = "eps_zero"; break;
  }
  if (rep.probe.size() > 0) out["probe"] = probe_to_json(rep.probe);
  return out;
}

void emit_record(const std::string& path, const std::string& command,
                 const json& config, const json& results, double wall_ms) {
  if (path.empty()) return;
  const json record{{"command", command},
                    {"config", config},
                    {"config_hash", config_hash(config)},
                    {"version", kVersion},
                    {"results", results},
                    {"wall_time_ms", wall_ms}};
  write_text_file(path, record.dump(2) + "\n");
}

void print_witness(const MetricReport& rep) {
  if (rep.probe.size() == 0) return;
  Eigen::Index arg = 0;
  double top = 0.0;
  for (Eigen::Index i = 0; i < rep.probe.size(); ++i) {
    if (std::abs(rep.probe(i)) > top) {
      top = std::abs(rep.probe(i));
      arg = i;
    }
  }
  std::cout << "witness: probe dim=" << rep.probe.size() << ", largest amplitude "
            << format_double(top) << " at basis index " << arg << "\n";
}

class Stopwatch {
 public:
  double ms() const {
    return std::chrono::duration<double, std::milli>(
               std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

// ----- metric ---------------------------------------------------------------

int run_metric(const std::string& mode, const FamilyArgs& fargs,
               const GminOptions& gopts, const std::string& record_path) {
  Stopwatch clock;
  const ResolvedPair pair = resolve_pair(fargs);
  json config = family_config(fargs);
  config["mode"] = mode;
  config["restarts"] = gopts.restarts;
  config["tol"] = gopts.tol;
  config["max_iter"] = gopts.max_iter;
  config["seed"] = gopts.seed;
  json results;

  if (mode == "min") {
    const MetricReport rep = g_min(pair.phi, pair.dphi, gopts);
    results = {{"g_min", metric_report_to_json(rep)}};
    std::cout << "g_min = " << format_double(rep.value)
              << "  (iterations=" << rep.iterations
              << ", converged=" << (rep.converged ? "yes" : "no")
              << ", restarts=" << rep.restarts_used << ")\n";
    print_witness(rep);
  } else if (mode == "rld") {
    GrOptions ropts;
    ropts.restarts = gopts.restarts;
    ropts.seed = gopts.seed;
    const MetricReport rep = g_r_output(pair.phi, pair.dphi, ropts);
    results = {{"g_r_output", metric_report_to_json(rep)}};
    std::cout << "g_r_output = " << format_double(rep.value)
              << "  (iterations=" << rep.iterations
              << ", converged=" << (rep.converged ? "yes" : "no") << ")\n";
    print_witness(rep);
  } else if (mode == "max" || mode == "cpball") {
    std::optional<MixtureSimulation> extra;
    if (pair.family) extra = pair.family->canonical_mixture(pair.theta);
    const GmaxUpper bound = g_max_upper(pair.phi, pair.dphi, extra);
    results = {{"g_max_upper", bound.value},
               {"eps", bound.eps},
               {"eps_capped", bound.eps_capped},
               {"two_point_bound", bound.two_point}};
    if (bound.mixture) results["mixture_bound"] = *bound.mixture;
    std::cout << "eps = " << format_double(bound.eps)
              << (bound.eps_capped ? " (capped)" : "")
              << ", g_max_upper = " << format_double(bound.value);
    if (bound.mixture) {
      std::cout << " (mixture bound " << format_double(*bound.mixture) << ")";
    }
    std::cout << "\n";
  } else {
    throw config_error("unknown metric mode '" + mode +
                       "' (expected min, rld, max, cpball)");
  }
  emit_record(record_path, "metric " + mode, config, results, clock.ms());
  return kExitOk;
}

// ----- scaling --------------------------------------------------------------

int run_scaling(const FamilyArgs& fargs, int n_max, const GminOptions& gopts,
                const std::string& csv_path, const std::string& svg_path,
                const std::string& record_path) {
  Stopwatch clock;
  double theta = fargs.theta;
  const ChannelFamily fam = resolve_family(fargs, &theta);
  json config = family_config(fargs);
  config["theta"] = theta;
  config["n_max"] = n_max;
  config["restarts"] = gopts.restarts;
  config["seed"] = gopts.seed;

  const std::vector<ScalingRow> rows = parallel_scaling(fam, theta, n_max, gopts);

  std::vector<std::vector<std::string>> csv_rows;
  std::vector<double> xs, ys;
  json jrows = json::array();
  for (const auto& row : rows) {
    csv_rows.push_back({std::to_string(row.n), format_double(row.g_min_over_n),
                        std::to_string(row.restarts_used),
                        row.converged ? "true" : "false"});
    xs.push_back(double(row.n));
    ys.push_back(row.g_min_over_n);
    jrows.push_back({{"n", row.n},
                     {"g_min_over_n", row.g_min_over_n},
                     {"restarts_used", row.restarts_used},
                     {"converged", row.converged}});
    std::cout << "n=" << row.n
              << "  g_min/n=" << format_double(row.g_min_over_n)
              << "  restarts=" << row.restarts_used
              << "  converged=" << (row.converged ? "yes" : "no") << "\n";
  }
  if (!csv_path.empty()) {
    write_csv(csv_path, {"n", "g_min_over_n", "restarts_used", "converged"},
              csv_rows);
  }
  if (!svg_path.empty()) {
    write_svg_line_plot(svg_path, "parallel scaling: g_min/n vs n", "n",
                        "g_min/n", xs, ys);
  }
  emit_record(record_path, "scaling", config, json{{"rows", jrows}}, clock.ms());
  return kExitOk;
}

// ----- simulate -------------------------------------------------------------

int run_simulate(const FamilyArgs& fargs, const std::string& probe,
                 const std::string& povm, std::vector<int> n_list, int trials,
                 std::uint64_t seed, const MleOptions& mle,
                 const std::string& csv_path, const std::string& svg_path,
                 const std::string& record_path) {
  Stopwatch clock;
  double theta = fargs.theta;
  const ChannelFamily fam = resolve_family(fargs, &theta);
  json config = family_config(fargs);
  config["theta"] = theta;
  config["probe"] = probe;
  config["povm"] = povm;
  config["n_list"] = n_list;
  config["trials"] = trials;
  config["seed"] = seed;
  config["resolution"] = mle.resolution;

  const Strategy strategy = make_strategy(fam, probe, povm, mle);
  const RateReport rep = rate_scan(fam, theta, strategy, n_list, trials, seed);
  if (rep.degenerate) {
    std::cerr << "error: strategy carries no information about theta\n";
    return kExitDegenerate;
  }

  std::vector<std::vector<std::string>> csv_rows;
  std::vector<double> xs, ys;
  json jrows = json::array();
  for (const auto& row : rep.rows) {
    csv_rows.push_back({std::to_string(row.n), format_double(row.mse),
                        format_double(row.n_mse), format_double(row.cr_floor)});
    xs.push_back(double(row.n));
    ys.push_back(row.mse);
    jrows.push_back({{"n", row.n},
                     {"mse", row.mse},
                     {"n_mse", row.n_mse},
                     {"cr_floor", row.cr_floor},
                     {"clipped", row.clipped}});
    std::cout << "n=" << row.n << "  mse=" << format_double(row.mse)
              << "  n*mse=" << format_double(row.n_mse)
              << "  cr_floor=" << format_double(row.cr_floor) << "\n";
  }
  if (rep.rows.size() >= 2) {
    std::cout << "fitted log-log slope = " << format_double(rep.slope) << "\n";
  }
  if (!csv_path.empty()) {
    write_csv(csv_path, {"n", "mse", "n_mse", "cr_floor"}, csv_rows);
  }
  if (!svg_path.empty()) {
    write_svg_line_plot(svg_path, "estimation: mse vs n", "n", "mse", xs, ys,
                        /*log_log=*/true);
  }
  emit_record(record_path, "simulate", config,
              json{{"rows", jrows},
                   {"slope", rep.slope},
                   {"cr_floor", rep.cr_floor}},
              clock.ms());
  return kExitOk;
}

std::vector<int> parse_n_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      out.push_back(std::stoi(tok));
    } catch (const std::exception&) {
      throw config_error("--n-list: '" + tok + "' is not an integer");
    }
  }
  if (out.empty()) throw config_error("--n-list is empty");
  return out;
}

}  // namespace

int cli_main(int argc, const char* const* argv) {
  CLI::App app{"metrics and estimation experiments on quantum channel spaces"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  // metric
  auto* metric = app.add_subcommand("metric", "compute channel metrics at a point");
  std::string metric_mode;
  metric->add_option("mode", metric_mode, "min | rld | max | cpball")->required();
  FamilyArgs metric_args;
  add_family_flags(metric, &metric_args);
  GminOptions metric_opts;
  metric->add_option("--restarts", metric_opts.restarts, "random restarts");
  metric->add_option("--tol", metric_opts.tol, "convergence tolerance");
  metric->add_option("--max-iter", metric_opts.max_iter, "iteration cap");
  metric->add_option("--seed", metric_opts.seed, "optimizer seed");
  std::string metric_record;
  metric->add_option("--out", metric_record, "write a JSON report record");

  // scaling
  auto* scaling = app.add_subcommand("scaling", "parallel n-copy scaling table");
  FamilyArgs scaling_args;
  add_family_flags(scaling, &scaling_args);
  int n_max = 3;
  GminOptions scaling_opts;
  scaling->add_option("--n-max", n_max, "largest copy count");
  scaling->add_option("--restarts", scaling_opts.restarts, "random restarts");
  scaling->add_option("--seed", scaling_opts.seed, "optimizer seed");
  std::string scaling_csv, scaling_svg, scaling_record;
  scaling->add_option("--csv", scaling_csv, "CSV output path");
  scaling->add_option("--svg", scaling_svg, "SVG plot path");
  scaling->add_option("--out", scaling_record, "write a JSON report record");

  // simulate
  auto* simulate = app.add_subcommand("simulate", "Monte Carlo estimation runs");
  FamilyArgs sim_args;
  add_family_flags(simulate, &sim_args);
  std::string probe = "bell", povm = "bell", n_list_text = "1000";
  int trials = 1000;
  std::uint64_t sim_seed = 1;
  MleOptions mle;
  simulate->add_option("--probe", probe, "probe preset: bell | zero | plus");
  simulate->add_option("--povm", povm,
                       "povm preset: bell | computational | identity");
  simulate->add_option("--n-list", n_list_text, "comma-separated channel uses");
  simulate->add_option("--trials", trials, "trials per n");
  simulate->add_option("--seed", sim_seed, "sampling seed");
  simulate->add_option("--grid-lo", mle.lo, "estimator interval low end");
  simulate->add_option("--grid-hi", mle.hi, "estimator interval high end");
  simulate->add_option("--resolution", mle.resolution, "estimator resolution");
  std::string sim_csv, sim_svg, sim_record;
  simulate->add_option("--csv", sim_csv, "CSV output path");
  simulate->add_option("--svg", sim_svg, "SVG plot path");
  simulate->add_option("--out", sim_record, "write a JSON report record");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (metric->parsed()) {
      return run_metric(metric_mode, metric_args, metric_opts, metric_record);
    }
    if (scaling->parsed()) {
      return run_scaling(scaling_args, n_max, scaling_opts, scaling_csv,
                         scaling_svg, scaling_record);
    }
    if (simulate->parsed()) {
      return run_simulate(sim_args, probe, povm, parse_n_list(n_list_text),
                          trials, sim_seed, mle, sim_csv, sim_svg, sim_record);
    }
    return kExitConfig;
  } catch (const budget_error& e) {
    std::cerr << "error (budget): " << e.what() << "\n";
    return kExitBudget;
  } catch (const degenerate_error& e) {
    std::cerr << "error (degenerate): " << e.what() << "\n";
    return kExitDegenerate;
  } catch (const numerical_error& e) {
    std::cerr << "error (numerical): " << e.what() << "\n";
    return kExitNumeric;
  } catch (const config_error& e) {
    std::cerr << "error (config): " << e.what() << "\n";
    return kExitConfig;
  } catch (const simulation_error& e) {
    std::cerr << "error (config): " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error (config): " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error (numerical): " << e.what() << "\n";
    return kExitNumeric;
  }
}

}  // namespace chanmet
