#pragma once

// schull command line: compute, gen, verify.
// Exit codes: 0 ok, 1 verify bracket violated, 2 bad flags, 3 invalid input,
// 4 unsupported combination (dimension or size outside an algorithm's scope).

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "sch/sch.hpp"

namespace schull {

enum ExitCode { kOk = 0, kViolation = 1, kBadFlags = 2, kInvalidInput = 3, kUnsupported = 4 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// FNV-1a, 64 bit, over the canonical serialization of the dataset.
inline std::string dataset_digest(const sch::StochasticDataset& ds) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : sch::serialize_dataset(ds)) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  std::ostringstream s;
  s << std::hex << std::setw(16) << std::setfill('0') << h;
  return s.str();
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw sch::ValidationError("cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

inline void write_output(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw sch::ValidationError("cannot write " + path);
  f << text;
}

inline sch::Statistic parse_stat(const std::string& s) {
  if (s == "diameter") return sch::Statistic::diameter;
  if (s == "width") return sch::Statistic::width;
  if (s == "complexity") return sch::Statistic::complexity;
  throw UsageError("unknown statistic: " + s);
}

struct Estimate {
  double value = 0.0;
  std::optional<std::pair<double, double>> bounds;
  // Proven range of value / true value.
  double ratio_lo = 1.0, ratio_hi = 1.0;
  std::optional<std::size_t> samples;
};

struct ComputeOptions {
  std::string stat = "diameter";
  std::string method = "witness";
  double eps = 0.1;
  std::optional<double> gamma;
  std::uint64_t seed = 0;
  unsigned threads = 1;
};

inline Estimate estimate(const sch::StochasticDataset& ds, const ComputeOptions& o) {
  const auto stat = parse_stat(o.stat);
  const std::string& m = o.method;
  Estimate e;
  if (m == "oracle") {
    e.value = sch::oracle_expectation(ds, stat, o.threads);
    e.bounds = {{e.value, e.value}};
    return e;
  }
  switch (stat) {
    case sch::Statistic::diameter:
      if (m == "witness") {
        e.value = sch::expected_diameter_witness(ds);
        e.bounds = {{e.value, e.value * sch::kWitnessDiameterFactor}};
        e.ratio_lo = 1.0 / sch::kWitnessDiameterFactor;
      } else if (m == "two-approx") {
        e.value = sch::expected_diameter_two_approx(ds);
        e.bounds = {{e.value, 2.0 * e.value}};
        e.ratio_lo = 0.5;
      } else {
        throw UsageError("method " + m + " is not available for diameter");
      }
      return e;
    case sch::Statistic::width:
      if (m == "witness") {
        e.value = sch::expected_width_witness(ds);
        const double c1 = sch::width_factor_c1(ds.dim());
        e.bounds = {{e.value, e.value / c1}};
        e.ratio_lo = c1;
      } else if (m == "fpras") {
        sch::FprasConfig cfg;
        cfg.epsilon = o.eps;
        cfg.gamma_override = o.gamma;
        cfg.seed = o.seed;
        cfg.threads = o.threads;
        if (!(o.eps > 0.0)) throw UsageError("--eps must be positive");
        if (o.gamma && !(*o.gamma > 0.0)) throw UsageError("--gamma must be positive");
        e.value = sch::expected_width_fpras(ds, cfg);
        e.samples = sch::fpras_sample_count(ds.size(), ds.dim(), cfg);
        e.ratio_lo = 1.0 - o.eps;
        e.ratio_hi = 1.0 + o.eps;
      } else {
        throw UsageError("method " + m + " is not available for width");
      }
      return e;
    case sch::Statistic::complexity:
      if (m == "witness" || m == "exact") {
        e.value = sch::expected_complexity(ds);
        e.bounds = {{e.value, e.value}};
      } else {
        throw UsageError("method " + m + " is not available for complexity");
      }
      return e;
  }
  throw UsageError("unknown statistic");
}

inline std::string format_number(double v) {
  std::ostringstream s;
  s << std::setprecision(12) << v;
  return s.str();
}

inline int cmd_compute(const std::string& input, const ComputeOptions& o, const std::string& format, bool timing,
                       std::ostream& out) {
  const auto ds = sch::parse_dataset(read_file(input));
  const auto t0 = std::chrono::steady_clock::now();
  const Estimate e = estimate(ds, o);
  const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();

  if (format == "text") {
    out << o.stat << ' ' << o.method << ' ' << format_number(e.value);
    if (e.bounds) out << " [" << format_number(e.bounds->first) << ", " << format_number(e.bounds->second) << ']';
    if (timing) out << ' ' << format_number(ms) << "ms";
    out << '\n';
    return kOk;
  }
  nlohmann::ordered_json j;
  j["schema"] = 1;
  j["statistic"] = o.stat;
  j["method"] = o.method;
  j["value"] = e.value;
  j["bounds"] = e.bounds ? nlohmann::ordered_json::array({e.bounds->first, e.bounds->second}) : nlohmann::ordered_json();
  j["seed"] = o.seed;
  j["dataset_digest"] = dataset_digest(ds);
  if (o.method == "fpras") {
    j["epsilon"] = o.eps;
    j["samples_per_simplex"] = *e.samples;
  }
  if (timing) j["elapsed_ms"] = ms;
  out << j.dump(2) << '\n';
  return kOk;
}

inline int cmd_verify(const std::string& input, const ComputeOptions& o, const std::string& format, std::ostream& out) {
  const auto ds = sch::parse_dataset(read_file(input));
  const double oracle = sch::oracle_expectation(ds, parse_stat(o.stat), o.threads);
  const Estimate e = estimate(ds, o);
  const double ratio = oracle == 0.0 ? (e.value == 0.0 ? 1.0 : std::numeric_limits<double>::infinity()) : e.value / oracle;
  constexpr double kSlack = 1e-9;
  const bool pass = ratio >= e.ratio_lo * (1.0 - kSlack) && ratio <= e.ratio_hi * (1.0 + kSlack);

  if (format == "text") {
    out << "oracle    " << format_number(oracle) << '\n'
        << "estimate  " << format_number(e.value) << '\n'
        << "ratio     " << format_number(ratio) << '\n'
        << "bracket   [" << format_number(e.ratio_lo) << ", " << format_number(e.ratio_hi) << "]\n"
        << (pass ? "PASS" : "FAIL") << '\n';
  } else {
    nlohmann::ordered_json j;
    j["schema"] = 1;
    j["statistic"] = o.stat;
    j["method"] = o.method;
    j["oracle"] = oracle;
    j["estimate"] = e.value;
    j["ratio"] = ratio;
    j["bracket"] = {e.ratio_lo, e.ratio_hi};
    j["pass"] = pass;
    j["dataset_digest"] = dataset_digest(ds);
    out << j.dump(2) << '\n';
  }
  return pass ? kOk : kViolation;
}

// A graph file, or one of the named families K<n>, P<n>, C<n>.
inline sch::Graph load_graph(const std::string& name) {
  if (name.size() >= 2 && (name[0] == 'K' || name[0] == 'P' || name[0] == 'C') &&
      name.find_first_not_of("0123456789", 1) == std::string::npos) {
    const std::size_t n = std::stoul(name.substr(1));
    if (name[0] == 'K') return sch::complete_graph(n);
    auto g = sch::path_graph(n);
    if (name[0] == 'C' && n >= 3) g.edges.emplace_back(0, n - 1);
    return g;
  }
  return sch::parse_graph(read_file(name));
}

inline int cmd_gen_hardness(const std::string& graph, const std::string& output, std::ostream& out) {
  const auto g = load_graph(graph);
  const auto inst = sch::hardness_instance(g);
  auto j = sch::dataset_to_json(inst.dataset);
  nlohmann::json meta;
  meta["graph_vertices"] = g.n;
  meta["graph_edges"] = g.edges.size();
  meta["alpha"] = inst.alpha;
  meta["beta"] = inst.beta;
  if (g.n <= 30) {
    const auto ind = sch::count_independent_sets(g);
    meta["independent_sets"] = ind;
    meta["expected_diameter"] = sch::hardness_closed_form(g.n, ind, inst.alpha, inst.beta);
  }
  j["hardness"] = meta;
  write_output(output, j.dump(2) + "\n", out);
  return kOk;
}

inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Expected diameter, width and complexity of stochastic convex hulls", "schull"};
  app.require_subcommand(1);

  ComputeOptions opt;
  std::string input, format = "json";
  bool timing = false;
  auto add_estimator_flags = [&](CLI::App* c) {
    c->add_option("--input", input, "dataset JSON")->required();
    c->add_option("--stat", opt.stat, "diameter|width|complexity")
        ->check(CLI::IsMember({"diameter", "width", "complexity"}));
    c->add_option("--method", opt.method, "witness|two-approx|fpras|oracle|exact")
        ->check(CLI::IsMember({"witness", "two-approx", "fpras", "oracle", "exact"}));
    c->add_option("--eps", opt.eps, "FPRAS accuracy");
    c->add_option("--gamma", opt.gamma, "FPRAS sample-count constant");
    c->add_option("--seed", opt.seed, "random seed");
    c->add_option("--format", format, "json|text")->check(CLI::IsMember({"json", "text"}));
    c->add_option("--threads", opt.threads, "worker threads")->check(CLI::Range(1U, 256U));
  };

  auto* compute = app.add_subcommand("compute", "evaluate an estimator on a dataset");
  add_estimator_flags(compute);
  compute->add_flag("--timing", timing, "add elapsed_ms to the report");

  auto* verify = app.add_subcommand("verify", "compare an estimator with the enumeration oracle");
  add_estimator_flags(verify);

  auto* gen = app.add_subcommand("gen", "generate datasets");
  gen->require_subcommand(1);
  std::size_t n = 8, dim = 2;
  double pmin = 0.1, pmax = 0.9;
  std::uint64_t gseed = 0;
  std::string output, graph;
  auto* gen_random = gen->add_subcommand("random", "uniform points in [-1,1]^d");
  gen_random->add_option("--n", n)->required();
  gen_random->add_option("--dim", dim)->required();
  gen_random->add_option("--seed", gseed);
  gen_random->add_option("--prob-min", pmin);
  gen_random->add_option("--prob-max", pmax);
  gen_random->add_option("--output", output);
  auto* gen_hard = gen->add_subcommand("hardness", "embedding of a graph for the expected diameter");
  gen_hard->add_option("--graph", graph, "edge-list file or K<n>/P<n>/C<n>")->required();
  gen_hard->add_option("--output", output);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kBadFlags;
  }

  try {
    if (compute->parsed()) return cmd_compute(input, opt, format, timing, out);
    if (verify->parsed()) return cmd_verify(input, opt, format, out);
    if (gen_random->parsed()) {
      if (dim < 1) throw UsageError("--dim must be at least 1");
      write_output(output, sch::serialize_dataset(sch::random_dataset(n, dim, gseed, pmin, pmax)), out);
      return kOk;
    }
    if (gen_hard->parsed()) return cmd_gen_hardness(graph, output, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kBadFlags;
  } catch (const sch::CapabilityError& e) {
    err << "unsupported: " << e.what() << '\n';
    return kUnsupported;
  } catch (const sch::Error& e) {
    err << "invalid input: " << e.what() << '\n';
    return kInvalidInput;
  }
  return kBadFlags;
}

}  // namespace schull
