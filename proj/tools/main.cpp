#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "iid/diagram_json.hpp"
#include "iid/errors.hpp"
#include "iid/oracle.hpp"
#include "iid/query.hpp"
#include "iid/sweep.hpp"
#include "iid/validate.hpp"

namespace {

// Exit codes are a stable contract: 0 success, 1 correctness violation
// (check only), 2 user/input error, 3 I/O or parse error.
constexpr int kOk = 0;
constexpr int kViolation = 1;
constexpr int kUserError = 2;
constexpr int kIoError = 3;

constexpr double kSlackTolerance = 1e-9;

std::string fixed(double v, int precision) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", precision, v);
  return buf;
}

std::vector<std::pair<std::string, std::string>> parse_evidence(
    const std::vector<std::string>& flags) {
  std::vector<std::pair<std::string, std::string>> evidence;
  for (const auto& flag : flags) {
    const auto eq = flag.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == flag.size()) {
      throw iid::PreconditionError("evidence must look like NODE=outcome, got '" +
                                   flag + "'");
    }
    evidence.emplace_back(flag.substr(0, eq), flag.substr(eq + 1));
  }
  return evidence;
}

// Loads and structurally validates a diagram; a printed report plus
// kUserError when it does not hold together.
iid::InfluenceDiagram load_checked(const std::string& path) {
  iid::InfluenceDiagram d = iid::load_diagram(path);
  const auto report = iid::validate_diagram(d);
  if (!report.ok()) {
    throw iid::ValidationError(report.to_string());
  }
  return d;
}

int run_validate(const std::string& path) {
  const iid::InfluenceDiagram d = iid::load_diagram(path);
  const auto report = iid::validate_diagram(d);
  if (report.ok()) {
    std::cout << "OK\n";
    return kOk;
  }
  std::cout << report.to_string();
  return kUserError;
}

int run_query(const std::string& path, const std::string& target,
              const std::vector<std::string>& evidence_flags, int precision,
              bool trace) {
  const iid::InfluenceDiagram d = load_checked(path);
  const iid::Query q{target, parse_evidence(evidence_flags)};
  const iid::QueryResult result = iid::answer(d, q);
  if (trace) {
    for (const auto& step : result.log) {
      std::cerr << to_string(step) << '\n';
    }
  }
  for (std::size_t i = 0; i < result.outcomes.size(); ++i) {
    std::cout << result.outcomes[i] << ' '
              << fixed(result.intervals[i].lo, precision) << ' '
              << fixed(result.intervals[i].hi, precision) << '\n';
  }
  std::cout << "range " << fixed(result.range, precision) << '\n';
  return kOk;
}

int run_check(const std::string& path, const std::string& target,
              const std::vector<std::string>& evidence_flags, int precision,
              long long cap) {
  const iid::InfluenceDiagram d = load_checked(path);
  const iid::Query q{target, parse_evidence(evidence_flags)};
  const iid::QueryResult engine = iid::answer(d, q);
  iid::OracleOptions opts;
  if (cap > 0) opts.max_assignments = cap;
  const auto oracle = iid::brute_force_interval(d, q, opts);

  bool contained = true;
  for (std::size_t i = 0; i < engine.intervals.size(); ++i) {
    const double slack_lo = oracle[i].lo - engine.intervals[i].lo;
    const double slack_hi = engine.intervals[i].hi - oracle[i].hi;
    std::cout << engine.outcomes[i] << " engine ["
              << fixed(engine.intervals[i].lo, precision) << ", "
              << fixed(engine.intervals[i].hi, precision) << "] oracle ["
              << fixed(oracle[i].lo, precision) << ", "
              << fixed(oracle[i].hi, precision) << "] slack "
              << fixed(slack_lo, precision) << ' ' << fixed(slack_hi, precision)
              << '\n';
    if (slack_lo < -kSlackTolerance || slack_hi < -kSlackTolerance) {
      contained = false;
    }
  }
  if (!contained) {
    std::cerr << "containment violated: an engine interval excludes "
                 "attainable values\n";
    return kViolation;
  }
  return kOk;
}

int run_sweep(const std::string& kind_flag, const std::string& out_path,
              bool bounded, const std::vector<double>& levels, double r_step) {
  iid::SweepSpec spec;
  spec.kind = kind_flag == "removal" ? iid::SweepKind::Removal
                                     : iid::SweepKind::Reversal;
  spec.mode =
      bounded ? iid::ConditionalMode::Bounded : iid::ConditionalMode::Exact;
  if (!levels.empty()) spec.levels = levels;
  if (r_step > 0.0) spec.r_step = r_step;

  const std::vector<iid::SweepRow> rows = iid::run_sweep(spec);
  if (rows.empty()) {
    std::cerr << "empty sweep\n";
    return kUserError;
  }
  std::ofstream out(out_path);
  if (!out) {
    std::cerr << "cannot open '" << out_path << "' for writing\n";
    return kIoError;
  }
  iid::write_csv(out, rows);
  out.flush();
  if (!out) {
    std::cerr << "write to '" << out_path << "' failed\n";
    return kIoError;
  }
  std::cout << rows.size() << " rows\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Interval inference on influence diagrams whose distributions are "
      "given by lower bounds"};
  app.require_subcommand(1);

  std::string path;
  std::string target;
  std::vector<std::string> evidence;
  int precision = 4;
  bool trace = false;

  auto* validate_cmd =
      app.add_subcommand("validate", "Check a diagram file and report every "
                                     "structural or numeric violation");
  validate_cmd->add_option("file", path, "diagram JSON file")->required();

  auto* query_cmd = app.add_subcommand(
      "query", "Print per-outcome probability intervals for a target node");
  query_cmd->add_option("file", path, "diagram JSON file")->required();
  query_cmd->add_option("--target", target, "node to query")->required();
  query_cmd->add_option("--evidence", evidence,
                        "observed outcome as NODE=outcome (repeatable)");
  query_cmd->add_option("--precision", precision, "printed decimal places")
      ->check(CLI::Range(0, 17));
  query_cmd->add_flag("--trace", trace,
                      "print the transformation steps to stderr");

  auto* check_cmd = app.add_subcommand(
      "check", "Compare the engine's intervals against brute-force "
               "enumeration and report per-outcome slack");
  long long cap = 0;
  check_cmd->add_option("file", path, "diagram JSON file")->required();
  check_cmd->add_option("--target", target, "node to query")->required();
  check_cmd->add_option("--evidence", evidence,
                        "observed outcome as NODE=outcome (repeatable)");
  check_cmd->add_option("--precision", precision, "printed decimal places")
      ->check(CLI::Range(0, 17));
  check_cmd->add_option("--cap", cap,
                        "extreme-point combination budget (default 10^7)");

  auto* sweep_cmd = app.add_subcommand(
      "sweep", "Write the range-propagation parameter sweep as CSV");
  std::string kind;
  std::string out_path;
  bool bounded = false;
  std::vector<double> levels;
  double r_step = 0.0;
  sweep_cmd->add_option("--kind", kind, "removal or reversal")
      ->required()
      ->check(CLI::IsMember({"removal", "reversal"}));
  sweep_cmd->add_option("--out", out_path, "output CSV path")->required();
  sweep_cmd->add_flag("--bounded", bounded,
                      "use conditional rows that carry slack of their own");
  sweep_cmd->add_option("--levels", levels,
                        "first lower bound of Y per level (default 0,0.1,...,0.4)");
  sweep_cmd->add_option("--r-step", r_step, "slack grid step (default 0.05)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << '\n';
    return kUserError;
  }

  try {
    if (*validate_cmd) return run_validate(path);
    if (*query_cmd) return run_query(path, target, evidence, precision, trace);
    if (*check_cmd) return run_check(path, target, evidence, precision, cap);
    if (*sweep_cmd) return run_sweep(kind, out_path, bounded, levels, r_step);
  } catch (const iid::ParseError& e) {
    std::cerr << e.what() << '\n';
    return kIoError;
  } catch (const iid::CapacityError& e) {
    std::cerr << e.what() << '\n';
    return kUserError;
  } catch (const iid::Error& e) {
    std::cerr << e.what() << '\n';
    return kUserError;
  } catch (const std::exception& e) {
    std::cerr << e.what() << '\n';
    return kUserError;
  }
  return kUserError;
}
