// casimir — Casimir energy and forces across a layered medium.
//
// Subcommands:
//   compute  evaluate E, F_L, F_R, F_S for the configured system
//   sweep    re-evaluate over a list of thicknesses for one layer, emit CSV
//   check    run the built-in verification suite on the configured system
//
// Exit codes: 0 success, 1 check failure, 2 quadrature non-convergence,
// 3 degenerate configuration, 4 config error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "casimir/checks.hpp"
#include "casimir/config.hpp"
#include "casimir/errors.hpp"
#include "casimir/report.hpp"
#include "casimir/threading.hpp"

namespace {

constexpr int kExitCheckFailed = 1;
constexpr int kExitNonConvergence = 2;
constexpr int kExitDegenerate = 3;
constexpr int kExitConfigError = 4;

void apply_thread_cap_from_env() {
  const char* env = std::getenv("CASIMIR_THREADS");
  if (env == nullptr || *env == '\0') return;
  char* end = nullptr;
  const unsigned long n = std::strtoul(env, &end, 10);
  if (end != nullptr && *end == '\0' && n >= 1) {
    casimir::set_max_threads(static_cast<unsigned>(n));
  } else {
    std::cerr << "warning: ignoring invalid CASIMIR_THREADS='" << env << "'\n";
  }
}

/// Writes to the configured path, or stdout when the path is empty.
class OutputSink {
 public:
  explicit OutputSink(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) {
        throw casimir::ValidationError(path + ": cannot open output file");
      }
    }
  }

  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

int run_compute(const casimir::RunConfig& cfg, casimir::EvalRoute route) {
  const casimir::CasimirResult result =
      casimir::casimir_forces(cfg.system, cfg.quadrature, route);
  OutputSink sink(cfg.output.path);
  if (cfg.output.format == casimir::OutputFormat::csv) {
    sink.stream() << casimir::csv_header << "\n"
                  << casimir::csv_row(cfg.system.total_gap(), result) << "\n";
  } else {
    sink.stream() << casimir::render_table(result);
  }
  return 0;
}

int run_sweep(const casimir::RunConfig& cfg, casimir::EvalRoute route) {
  if (!cfg.sweep) {
    throw casimir::ValidationError(
        "sweep requires [task] target and values in the config");
  }
  OutputSink sink(cfg.output.path);
  sink.stream() << casimir::csv_header << "\n";
  for (const double value : cfg.sweep->values) {
    casimir::SystemConfig sys = cfg.system;
    sys.medium[cfg.sweep->layer_index - 1].d = value;
    try {
      const casimir::CasimirResult result =
          casimir::casimir_forces(sys, cfg.quadrature, route);
      sink.stream() << casimir::csv_row(value, result) << "\n";
    } catch (const casimir::Error& e) {
      sink.stream() << casimir::csv_error_row(value, e.what()) << "\n";
    }
  }
  return 0;
}

int run_check(const casimir::RunConfig& cfg) {
  const auto results = casimir::checks::run_all(cfg.system, cfg.quadrature);
  for (const auto& r : results) {
    const char* tag = r.status == casimir::checks::Status::pass   ? "PASS"
                      : r.status == casimir::checks::Status::skip ? "SKIP"
                                                                  : "FAIL";
    std::cout << tag << " " << r.name;
    if (!r.detail.empty()) std::cout << " (" << r.detail << ")";
    std::cout << "\n";
  }
  return casimir::checks::all_passed(results) ? 0 : kExitCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Casimir energy and forces across a layered medium"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_path;
  std::string format;
  double rel_tol = 0.0;
  bool debug_n2 = false;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", config_path, "config file path")->required();
    cmd->add_option("--out", out_path, "output file (default: stdout)");
    cmd->add_option("--format", format, "output format")
        ->check(CLI::IsMember({"table", "csv"}));
    cmd->add_option("--rel-tol", rel_tol, "override quadrature rel_tol");
    cmd->add_flag("--debug-n2-path", debug_n2,
                  "evaluate through the direct two-medium closed form "
                  "(requires exactly two layers)");
  };

  CLI::App* compute = app.add_subcommand("compute", "evaluate the system");
  CLI::App* sweep = app.add_subcommand("sweep", "sweep one layer thickness");
  CLI::App* check = app.add_subcommand("check", "run verification checks");
  add_common(compute);
  add_common(sweep);
  add_common(check);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfigError;
  }

  apply_thread_cap_from_env();

  try {
    casimir::RunConfig cfg = casimir::load_config(config_path);
    if (rel_tol > 0.0) {
      cfg.quadrature.rel_tol = rel_tol;
      cfg.quadrature.validate();
    }
    if (!out_path.empty()) cfg.output.path = out_path;
    if (format == "table") cfg.output.format = casimir::OutputFormat::table;
    if (format == "csv") cfg.output.format = casimir::OutputFormat::csv;
    const casimir::EvalRoute route = debug_n2
                                         ? casimir::EvalRoute::two_medium
                                         : casimir::EvalRoute::recursive;
    if (compute->parsed()) return run_compute(cfg, route);
    if (sweep->parsed()) return run_sweep(cfg, route);
    return run_check(cfg);
  } catch (const casimir::ParseError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const casimir::ValidationError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const casimir::NonConvergence& e) {
    std::cerr << "non-convergence: " << e.what() << "\n";
    return kExitNonConvergence;
  } catch (const casimir::DegenerateError& e) {
    std::cerr << "degenerate configuration: " << e.what() << "\n";
    return kExitDegenerate;
  } catch (const casimir::DomainError& e) {
    std::cerr << "evaluation error: " << e.what() << "\n";
    return kExitDegenerate;
  }
}
