#include "probvar/cli.hpp"

#include <algorithm>
#include <cctype>
#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <ostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "probvar/conditional.hpp"
#include "probvar/errors.hpp"
#include "probvar/suites.hpp"
#include "probvar/variational.hpp"

namespace probvar::cli {
namespace {

// ---------------------------------------------------------------------------
// Output formatting. Keys are fixed and alphabetically sorted; floats carry
// 17 significant digits so values round-trip; same input (and seed) gives
// byte-identical output.

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string fmt(bool v) { return v ? "true" : "false"; }

std::string fmt(std::size_t v) { return std::to_string(v); }

std::string fmt_array(const std::vector<double>& values) {
  std::string out = "[";
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ", ";
    out += fmt(values[i]);
  }
  out += "]";
  return out;
}

std::string json_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Problem files.

struct ProblemFile {
  ProbabilitySpace space;
  Partition partition;
  std::optional<Event> event;
  std::optional<RandomVariable> target;
};

nlohmann::json parse_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw BadConfig("cannot open input file '" + path + "'");
  }
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw BadConfig("input file '" + path + "' is not valid JSON: " + e.what());
  }
}

std::vector<double> read_double_array(const nlohmann::json& node,
                                      const std::string& field) {
  if (!node.is_array()) {
    throw BadConfig("\"" + field + "\" must be an array of numbers");
  }
  std::vector<double> out;
  out.reserve(node.size());
  for (const auto& v : node) {
    if (!v.is_number()) {
      throw BadConfig("\"" + field + "\" must contain only numbers");
    }
    out.push_back(v.get<double>());
  }
  return out;
}

std::vector<std::size_t> read_index_array(const nlohmann::json& node,
                                          const std::string& field) {
  if (!node.is_array()) {
    throw BadConfig("\"" + field + "\" must be an array of outcome indices");
  }
  std::vector<std::size_t> out;
  out.reserve(node.size());
  for (const auto& v : node) {
    if (!v.is_number_unsigned()) {
      throw BadConfig("\"" + field +
                      "\" must contain only nonnegative integers (0-based "
                      "outcome indices)");
    }
    out.push_back(v.get<std::size_t>());
  }
  return out;
}

ProblemFile load_problem(const std::string& path) {
  const nlohmann::json doc = parse_json_file(path);
  if (!doc.is_object()) {
    throw BadConfig("problem file must be a JSON object");
  }
  for (const auto& item : doc.items()) {
    const std::string& key = item.key();
    if (key != "weights" && key != "labels" && key != "partition" &&
        key != "event" && key != "target") {
      throw BadConfig("unknown field \"" + key + "\" in problem file");
    }
  }
  if (!doc.contains("weights")) {
    throw BadConfig("problem file is missing \"weights\"");
  }
  if (!doc.contains("partition")) {
    throw BadConfig("problem file is missing \"partition\"");
  }

  std::vector<std::string> labels;
  if (doc.contains("labels")) {
    const auto& node = doc["labels"];
    if (!node.is_array()) {
      throw BadConfig("\"labels\" must be an array of strings");
    }
    for (const auto& v : node) {
      if (!v.is_string()) {
        throw BadConfig("\"labels\" must contain only strings");
      }
      labels.push_back(v.get<std::string>());
    }
  }
  ProbabilitySpace space = ProbabilitySpace::make(
      read_double_array(doc["weights"], "weights"), std::move(labels));

  const auto& part_node = doc["partition"];
  if (!part_node.is_array()) {
    throw BadConfig("\"partition\" must be an array of index arrays");
  }
  std::vector<Event> blocks;
  blocks.reserve(part_node.size());
  for (const auto& b : part_node) {
    blocks.push_back(space.make_event(read_index_array(b, "partition block")));
  }
  Partition partition = Partition::make(space, std::move(blocks));

  std::optional<Event> event;
  if (doc.contains("event")) {
    event = space.make_event(read_index_array(doc["event"], "event"));
  }
  std::optional<RandomVariable> target;
  if (doc.contains("target")) {
    target = RandomVariable(space, read_double_array(doc["target"], "target"));
  }
  if (event && target) {
    throw BadConfig(
        "problem file has both \"event\" and \"target\"; they are mutually "
        "exclusive");
  }

  return ProblemFile{std::move(space), std::move(partition), std::move(event),
                     std::move(target)};
}

const Event& require_event(const ProblemFile& pf, const char* command) {
  if (!pf.event) {
    throw BadConfig(std::string(command) +
                    " needs an \"event\" array in the problem file");
  }
  return *pf.event;
}

RandomVariable require_target(const ProblemFile& pf, const char* command) {
  if (pf.target) return *pf.target;
  if (pf.event) return indicator(*pf.event);
  throw BadConfig(std::string(command) +
                  " needs exactly one of \"event\" or \"target\" in the "
                  "problem file");
}

// ---------------------------------------------------------------------------
// Subcommands.

int run_total_prob(const std::string& path, std::ostream& out) {
  const ProblemFile pf = load_problem(path);
  const Event& a = require_event(pf, "total-prob");
  const double p_event = pf.space.prob(a);
  const double total = total_probability(a, pf.partition);

  out << "{\n";
  out << "  \"p_event\": " << fmt(p_event) << ",\n";
  out << "  \"per_block\": [\n";
  const std::size_t n_blocks = pf.partition.block_count();
  for (std::size_t j = 0; j < n_blocks; ++j) {
    const double cond = pf.space.cond_prob(a, pf.partition.block(j));
    out << "    { \"cond_prob\": " << fmt(cond)
        << ", \"p_block\": " << fmt(pf.partition.block_prob(j)) << " }"
        << (j + 1 < n_blocks ? "," : "") << "\n";
  }
  out << "  ],\n";
  out << "  \"total_probability\": " << fmt(total) << "\n";
  out << "}\n";
  return 0;
}

int run_cond_exp(const std::string& path, std::ostream& out) {
  const ProblemFile pf = load_problem(path);
  const RandomVariable target = require_target(pf, "cond-exp");
  const ConditionalExpectation xi = cond_expectation(target, pf.partition);
  const PropertyReport report = verify_properties(target, pf.partition, xi);

  out << "{\n";
  out << "  \"coefficients\": " << fmt_array(xi.coefficients) << ",\n";
  out << "  \"verified\": {\n";
  out << "    \"integrable\": " << fmt(report.integrable) << ",\n";
  out << "    \"measurable\": " << fmt(report.measurable) << ",\n";
  out << "    \"partial\": " << fmt(report.partial) << ",\n";
  out << "    \"property_iii_max_violation\": "
      << fmt(report.property_iii_max_violation) << "\n";
  out << "  }\n";
  out << "}\n";
  return 0;
}

int run_minimize(const std::string& path, const std::string& method,
                 double tol, std::size_t max_iters,
                 std::optional<double> step, bool want_trace,
                 std::ostream& out, std::ostream& err) {
  const ProblemFile pf = load_problem(path);
  const RandomVariable target = require_target(pf, "minimize");
  const EnergyProblem problem(pf.partition, target);

  SolverConfig config;
  if (method == "exact") {
    config.method = SolveMethod::exact;
  } else if (method == "gd") {
    config.method = SolveMethod::gradient_descent;
  } else if (method == "preconditioned") {
    config.method = SolveMethod::preconditioned;
  } else {
    throw BadConfig("unknown method '" + method +
                    "'; expected exact, gd, or preconditioned");
  }
  config.tol = tol;
  config.max_iters = max_iters;
  config.step = step;
  config.record_trace = want_trace;

  const SolverResult result = minimize(problem, config);
  if (result.ill_conditioned) {
    err << "warning: block probabilities span more than six orders of "
           "magnitude; gradient descent converges slowly on such problems\n";
  }

  const ConditionalExpectation closed = cond_expectation(target, pf.partition);
  double diff = 0.0;
  for (std::size_t j = 0; j < closed.coefficients.size(); ++j) {
    diff = std::max(diff,
                    std::abs(result.coefficients[j] - closed.coefficients[j]));
  }

  out << "{\n";
  out << "  \"closed_form_max_abs_diff\": " << fmt(diff) << ",\n";
  out << "  \"coefficients\": " << fmt_array(result.coefficients) << ",\n";
  out << "  \"converged\": " << fmt(result.converged) << ",\n";
  out << "  \"energy\": " << fmt(result.energy) << ",\n";
  out << "  \"grad_inf_norm\": " << fmt(result.grad_inf_norm) << ",\n";
  out << "  \"iterations\": " << fmt(result.iterations);
  if (want_trace) {
    out << ",\n  \"trace\": [";
    if (result.trace.empty()) {
      out << "]\n";
    } else {
      out << "\n";
      for (std::size_t i = 0; i < result.trace.size(); ++i) {
        out << "    { \"energy\": " << fmt(result.trace[i].energy)
            << ", \"grad_inf_norm\": " << fmt(result.trace[i].grad_inf_norm)
            << " }" << (i + 1 < result.trace.size() ? "," : "") << "\n";
      }
      out << "  ]\n";
    }
  } else {
    out << "\n";
  }
  out << "}\n";

  if (!result.converged) {
    err << "error: NonConvergence: gradient infinity norm "
        << fmt(result.grad_inf_norm) << " is above tolerance "
        << fmt(config.tol) << " after " << result.iterations
        << " iterations\n";
    return 2;
  }
  return 0;
}

int run_check(const std::string& suite_arg, std::size_t trials,
              std::uint64_t seed, std::optional<double> p_override,
              std::ostream& out) {
  const std::optional<Suite> suite = suite_from_name(suite_arg);
  if (!suite) {
    throw BadConfig("unknown suite '" + suite_arg +
                    "'; expected holder, clarkson, monotonicity, sigma, or "
                    "dirichlet");
  }
  if (p_override && !(*p_override > 1.0)) {
    throw BadExponent("--p must be > 1, got " + fmt(*p_override));
  }
  const SuiteResult result = run_suite(*suite, trials, seed, p_override);

  out << "{\n";
  out << "  \"failures\": " << fmt(result.failures) << ",\n";
  if (result.first_failure) {
    out << "  \"first_failure\": { \"message\": \""
        << json_escape(result.first_failure->message)
        << "\", \"trial\": " << fmt(result.first_failure->trial) << " },\n";
  } else {
    out << "  \"first_failure\": null,\n";
  }
  out << "  \"trials\": " << fmt(result.trials) << ",\n";
  out << "  \"worst_slack\": " << fmt(result.worst_slack) << "\n";
  out << "}\n";
  return result.failures > 0 ? 3 : 0;
}

/// Default seed for `check`: PROBVAR_SEED when set, else 0. An explicit
/// --seed flag still wins over the environment.
std::uint64_t default_seed() {
  const char* env = std::getenv("PROBVAR_SEED");
  if (env == nullptr || *env == '\0') return 0;
  for (const char* c = env; *c; ++c) {
    if (!std::isdigit(static_cast<unsigned char>(*c))) {
      throw BadConfig("PROBVAR_SEED must be a nonnegative integer, got '" +
                      std::string(env) + "'");
    }
  }
  errno = 0;
  const unsigned long long v = std::strtoull(env, nullptr, 10);
  if (errno == ERANGE) {
    throw BadConfig("PROBVAR_SEED is out of range: '" + std::string(env) +
                    "'");
  }
  return v;
}

int run_impl(std::vector<std::string> args, std::ostream& out,
             std::ostream& err) {
  CLI::App app{
      "Conditional expectations and probabilities on finite probability "
      "spaces, computed in closed form and by energy minimization, with "
      "seeded inequality suites."};
  app.name("probvar");
  app.require_subcommand(1);

  std::string total_input;
  CLI::App* total = app.add_subcommand(
      "total-prob", "P(A) alongside the sum of P(A|Bj) P(Bj) over blocks");
  total->add_option("-i,--input", total_input, "problem file (JSON)")
      ->required();

  std::string cond_input;
  CLI::App* cond = app.add_subcommand(
      "cond-exp",
      "Per-block conditional expectation coefficients of the target, with "
      "the defining properties verified");
  cond->add_option("-i,--input", cond_input, "problem file (JSON)")
      ->required();

  std::string min_input;
  std::string method;
  double tol = 1e-10;
  std::size_t max_iters = 1000000;
  double step_value = 0.0;
  bool want_trace = false;
  CLI::App* min_cmd = app.add_subcommand(
      "minimize",
      "Minimize the energy 1/2 E(X^2) - E(X*target) over variables constant "
      "on each block; reports distance to the closed form");
  min_cmd->add_option("-i,--input", min_input, "problem file (JSON)")
      ->required();
  min_cmd
      ->add_option("--method", method,
                   "solver: exact, gd, or preconditioned")
      ->required()
      ->check(CLI::IsMember({"exact", "gd", "preconditioned"}));
  min_cmd->add_option("--tol", tol,
                      "gradient infinity-norm stopping threshold");
  min_cmd->add_option("--max-iters", max_iters, "iteration cap");
  CLI::Option* step_opt = min_cmd->add_option(
      "--step", step_value,
      "gd step size (default 1 / max block probability)");
  min_cmd->add_flag("--trace", want_trace,
                    "include per-iteration energy and gradient norm");

  std::string suite_arg;
  std::size_t trials = 1000;
  std::uint64_t seed = default_seed();
  double p_value = 0.0;
  CLI::App* check_cmd = app.add_subcommand(
      "check", "Run a seeded property suite and report failures");
  check_cmd
      ->add_option("--suite", suite_arg,
                   "holder, clarkson, monotonicity, sigma, or dirichlet")
      ->required();
  check_cmd->add_option("--trials", trials, "number of random trials");
  check_cmd->add_option(
      "--seed", seed,
      "base RNG seed (default 0, or PROBVAR_SEED when set)");
  CLI::Option* p_opt = check_cmd->add_option(
      "--p", p_value, "fix the exponent instead of cycling a grid");

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  if (total->parsed()) {
    return run_total_prob(total_input, out);
  }
  if (cond->parsed()) {
    return run_cond_exp(cond_input, out);
  }
  if (min_cmd->parsed()) {
    std::optional<double> step;
    if (step_opt->count() > 0) step = step_value;
    return run_minimize(min_input, method, tol, max_iters, step, want_trace,
                        out, err);
  }
  if (check_cmd->parsed()) {
    std::optional<double> p_override;
    if (p_opt->count() > 0) p_override = p_value;
    return run_check(suite_arg, trials, seed, p_override, out);
  }
  return 1;  // unreachable: require_subcommand(1)
}

}  // namespace

int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  try {
    return run_impl(std::move(args), out, err);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace probvar::cli
