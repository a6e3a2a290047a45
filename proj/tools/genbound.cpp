// Copyright 2026 The genbound Authors
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

#include <CLI11.hpp>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "genbound/figures.hpp"
#include "genbound/io/config.hpp"
#include "genbound/io/csv.hpp"
#include "genbound/io/svg.hpp"
#include "genbound/oracles.hpp"
#include "genbound/parallel.hpp"
#include "genbound/registry.hpp"

namespace {

using namespace genbound;

constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

io::Config load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config " + path);
  return io::Config::parse(in);
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << text;
  out.flush();
  if (!out) throw IoError("write failed for " + path.string());
}

void apply_overrides(io::Config& cfg, const std::vector<std::string>& sets, const std::string& prefix = "") {
  for (const auto& kv : sets) {
    const auto eq = kv.find('=');
    require(eq != std::string::npos && eq > 0, "--set expects key=value, got " + kv);
    cfg.set(prefix + kv.substr(0, eq), kv.substr(eq + 1));
  }
}

const Operation& find_operation(const std::string& name) {
  const auto& ops = operations();
  auto it = ops.find(name);
  require(it != ops.end(), "unknown operation: " + name);
  return it->second;
}

int cmd_eval(const std::string& path) {
  const io::Config cfg = load_config(path);
  const std::string name = cfg.get_string("operation");
  const Operation& op = find_operation(name);
  const BoundResult r = op(Params(cfg, "params."));
  std::vector<std::string> header{"operation"}, row{name};
  for (const auto& key : cfg.keys_with_prefix("params.")) {
    header.push_back(key.substr(7));
    row.push_back(cfg.get_string(key));
  }
  header.insert(header.end(), {"value", "regime", "vacuous"});
  row.insert(row.end(), {io::format_number(r.value), r.regime, r.vacuous ? "true" : "false"});
  for (const auto& [k, v] : r.params) {
    header.push_back("param." + k);
    row.push_back(io::format_number(v));
  }
  io::CsvTable t(header);
  t.add_meta(io::meta_line(cfg.canonical()));
  t.add_row(row);
  t.write(std::cout);
  return 0;
}

std::vector<std::string> split_names(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto b = item.find_first_not_of(' ');
    const auto e = item.find_last_not_of(' ');
    if (b != std::string::npos) out.push_back(item.substr(b, e - b + 1));
  }
  return out;
}

bool integer_parameter(const std::string& name) {
  return name == "n" || name == "Z" || name == "k" || name == "t" || name == "d";
}

int cmd_sweep(const std::string& path) {
  const io::Config cfg = load_config(path);
  const std::vector<std::string> targets =
      split_names(cfg.has("targets") ? cfg.get_string("targets") : cfg.get_string("target"));
  require(!targets.empty(), "sweep: no targets");
  std::vector<const Operation*> ops;
  for (const auto& t : targets) ops.push_back(&find_operation(t));
  const std::string param = cfg.get_string("sweep.parameter");
  require(!cfg.has("fixed." + param), "sweep: parameter " + param + " is also fixed");
  const double lo = cfg.get_double("sweep.min");
  const double hi = cfg.get_double("sweep.max");
  const long long points = cfg.get_int("sweep.points");
  require(points >= 2, "sweep: points must be >= 2");
  require(hi > lo, "sweep: max must exceed min");
  const std::string scale = cfg.get_string("sweep.scale", "linear");
  require(scale == "linear" || scale == "log", "sweep: scale must be linear or log");
  require(scale == "linear" || lo > 0.0, "sweep: log scale needs min > 0");
  std::vector<double> xs = spaced(lo, hi, static_cast<int>(points), scale == "log");
  if (integer_parameter(param))
    for (double& x : xs) x = static_cast<double>(std::llround(x));

  std::vector<std::vector<double>> values(xs.size(), std::vector<double>(ops.size()));
  parallel_for(xs.size(), [&](std::size_t i) {
    io::Config point = cfg;
    point.set("fixed." + param, io::format_number(xs[i]));
    const Params p(point, "fixed.");
    for (std::size_t j = 0; j < ops.size(); ++j) values[i][j] = (*ops[j])(p).value;
  });
  std::vector<std::string> header{param};
  header.insert(header.end(), targets.begin(), targets.end());
  io::CsvTable t(header);
  t.add_meta(io::meta_line(cfg.canonical()));
  for (std::size_t i = 0; i < xs.size(); ++i) {
    std::vector<double> row{xs[i]};
    row.insert(row.end(), values[i].begin(), values[i].end());
    t.add_numeric_row(row);
  }
  if (cfg.has("output")) {
    write_file(cfg.get_string("output"), t.str());
  } else {
    t.write(std::cout);
  }
  return 0;
}

int cmd_figure(const std::string& name, const std::string& out_dir, const std::vector<std::string>& sets) {
  io::Config cfg;
  apply_overrides(cfg, sets);
  const FigureOutput fig = make_figure(name, cfg);
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw IoError("cannot create " + out_dir);
  io::CsvTable table = fig.table;
  table.add_meta(io::meta_line("figure=" + name + "\n" + cfg.canonical()));
  if (name == "glm_comparison") table.add_meta("single-letter Wasserstein column is the W2 upper bound of the W1 term");
  write_file(std::filesystem::path(out_dir) / (name + ".csv"), table.str());
  for (const auto& [stem, chart] : fig.charts) write_file(std::filesystem::path(out_dir) / (stem + ".svg"), io::render_svg(chart));
  std::cout << "wrote " << (std::filesystem::path(out_dir) / (name + ".csv")).string() << " and " << fig.charts.size()
            << " svg file(s)\n";
  return 0;
}

int cmd_oracle(const std::string& name, std::uint64_t seed, const std::vector<std::string>& sets) {
  io::Config cfg;
  apply_overrides(cfg, sets);
  std::vector<std::pair<std::string, std::string>> fields;
  auto num = [&](const std::string& k, double v) { fields.emplace_back(k, io::format_number(v)); };
  if (name == "glm") {
    GlmSpec s{cfg.get_int("d", 1), cfg.get_double("sigma2", 1.0), cfg.get_int("n", 2), {}};
    const McEstimate mc = glm_mc_gen(s, cfg.get_int("replicates", 100000), seed);
    num("d", static_cast<double>(s.d));
    num("n", static_cast<double>(s.n));
    num("exact_gen", glm_exact_gen(s));
    num("mc_estimate", mc.estimate);
    num("mc_std_error", mc.std_error);
    num("replicates", static_cast<double>(mc.replicates));
  } else if (name == "gd-counterexample") {
    GdCounterexampleSpec s;
    s.n = cfg.get_int("n", 5);
    s.d = cfg.get_int("d", 0);
    s.T = cfg.get_int("T", 0);
    s.eta = cfg.get_double("eta", 0.0);
    s.seed = seed;
    const GdReport r = gd_counterexample_run(s, cfg.get_int("replicates", 100000));
    num("n", static_cast<double>(s.n));
    num("mean_gen", r.mean_gen);
    num("mean_gen_std_error", r.mean_gen_std_error);
    num("khintchine_lb", r.khintchine_lb);
    num("gd_gen", r.gd_gen);
    num("gd_gen_std_error", r.gd_gen_std_error);
    num("p_event_E", r.p_event_E);
    num("p_event_E_floor", r.p_event_E_floor);
    num("decode_error_given_E", r.decode_error_given_E);
    num("replicates", static_cast<double>(r.replicates));
  } else if (name == "sgld") {
    SgldProblem p;
    p.n = cfg.get_int("n", p.n);
    p.batch = cfg.get_int("batch", p.batch);
    p.steps = cfg.get_int("steps", p.steps);
    p.step_c = cfg.get_double("step_c", p.step_c);
    p.clip = cfg.get_double("clip", p.clip);
    p.loss_scale = cfg.get_double("loss_scale", p.loss_scale);
    p.replicates = cfg.get_int("replicates", p.replicates);
    p.seed = seed;
    const SgldReport r = sgld_trace_demo(p);
    num("pensia_mi", r.pensia_mi);
    num("pensia_bound", r.pensia_bound);
    num("incoherence_bound", r.incoherence_bound);
    num("two_sample_bound_illustrative", r.two_sample_bound);
    num("mc_gen_estimate", r.mc_gen_estimate);
    num("mc_gen_std_error", r.mc_gen_std_error);
    fields.emplace_back("incoherence_below_pensia", r.incoherence_below_pensia ? "true" : "false");
  } else if (name == "mixture-kl") {
    const auto c = random_mixture_case(seed, static_cast<std::uint64_t>(cfg.get_int("case", 0)));
    const MixtureKl m = mixture_kl_bounds(c.p, c.mix);
    num("alphabet", static_cast<double>(c.p.size()));
    num("components", static_cast<double>(c.mix.components.size()));
    num("exact", m.exact);
    num("log_sum_exp_bound", m.log_sum_exp_bound);
    num("min_bound", m.min_bound);
  } else if (name == "types") {
    const long long Z = cfg.get_int("Z", 2), n = cfg.get_int("n", 5);
    num("Z", static_cast<double>(Z));
    num("n", static_cast<double>(n));
    num("enumerated", static_cast<double>(types_enumerate(Z, n)));
    num("closed_form", type_count(AlphabetSpec(Z), n).convert_to<double>());
  } else if (name == "kl-inverse") {
    const double r = cfg.get_double("r_hat", 0.1), b = cfg.get_double("budget", 0.1);
    const long long g = cfg.get_int("grid", 1000000);
    num("r_hat", r);
    num("budget", b);
    num("brute", kl_inverse_brute(r, b, g));
    num("bisection", kl_inverse_upper(r, b));
  } else {
    throw InputError("unknown oracle: " + name + " (glm, gd-counterexample, sgld, mixture-kl, types, kl-inverse)");
  }
  std::vector<std::string> header{"oracle", "seed"}, row{name, std::to_string(seed)};
  for (const auto& [k, v] : fields) {
    header.push_back(k);
    row.push_back(v);
  }
  io::CsvTable t(header);
  t.add_meta(io::meta_line("oracle=" + name + "\nseed=" + std::to_string(seed) + "\n" + cfg.canonical()));
  t.add_row(row);
  t.write(std::cout);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"genbound: generalization bound calculator"};
  app.require_subcommand(1);
  std::string config_path, figure_name, oracle_name, out_dir = ".";
  std::vector<std::string> sets;
  std::uint64_t seed = 0;

  auto* eval = app.add_subcommand("eval", "Evaluate one bound from a config file");
  eval->add_option("config", config_path, "Config file")->required();
  auto* sweep = app.add_subcommand("sweep", "Sweep one parameter over a grid");
  sweep->add_option("config", config_path, "Config file")->required();
  auto* figure = app.add_subcommand("figure", "Regenerate a comparison figure (CSV + SVG)");
  figure->add_option("name", figure_name, "glm_comparison | variance_bounds | dp_pacbayes | dp_expected")->required();
  figure->add_option("--out", out_dir, "Output directory");
  figure->add_option("--set", sets, "Parameter override key=value");
  auto* oracle = app.add_subcommand("oracle", "Run an analytic or Monte-Carlo oracle");
  oracle->add_option("name", oracle_name, "glm | gd-counterexample | sgld | mixture-kl | types | kl-inverse")->required();
  oracle->add_option("--seed", seed, "RNG seed");
  oracle->add_option("--set", sets, "Parameter override key=value");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }
  try {
    if (*eval) return cmd_eval(config_path);
    if (*sweep) return cmd_sweep(config_path);
    if (*figure) return cmd_figure(figure_name, out_dir, sets);
    if (*oracle) return cmd_oracle(oracle_name, seed, sets);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const IoError& e) {
    std::cerr << "io error: " << e.what() << '\n';
    return kExitIo;
  }
  return kExitUsage;
}
