#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace sesqui::cli {

/// Exit codes of every command.
enum ExitCode : int { kSuccess = 0, kCheckFailed = 1, kInvalidInput = 2 };

/// Raised for configuration values outside their documented range.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string curve_path;
  double c = -3.0;
  double delta1 = -8.0;
  double delta2 = 2.0;
  int grid = 512;
  double t0 = 0.0;
  double t1 = 6.283185307179586;
  bool open = false;
  double tol = 1e-7;          ///< osculating-order tolerance
  double check_tol = 1e-6;    ///< equation / constancy tolerance
  double legendre_tol = 1e-8;
  double speed_tol = 1e-6;
  bool flipped_sign = false;
  std::string out;

  /// Throws ConfigError.
  void validate() const;
};

/// Inclusive range "a:b:N" with N samples (N = 1 means just a).
struct Range {
  double lo = 0.0;
  double hi = 0.0;
  int count = 1;

  static Range parse(const std::string& text);
  double at(int i) const { return count == 1 ? lo : lo + (hi - lo) * i / (count - 1); }
};

struct ScanConfig {
  std::string case_name = "II";
  Range c{-3.0, -3.0, 1};
  Range k1{2.0, 2.0, 1};
  Range k2{0.0, 0.0, 1};
  Range alpha{0.7853981633974483, 0.7853981633974483, 1};
  int n = 2;
  double check_tol = 1e-6;
  int threads = 0;  ///< 0: hardware concurrency
  std::string out;

  void validate() const;
};

struct FlowConfig {
  RunConfig run;
  int steps = 100;
  double rate = 1e-3;

  void validate() const;
};

struct CommandResult {
  int exit_code = kSuccess;
  std::string output;       ///< report body (JSON or CSV)
  std::string diagnostics;  ///< message for standard error
};

CommandResult cmd_analyze(const RunConfig& config);
CommandResult cmd_verify_example(const RunConfig& config);
CommandResult cmd_scan(const ScanConfig& config);
CommandResult cmd_flow(const FlowConfig& config);

/// Deterministic JSON text: two-space indentation, insertion order, numbers with 17
/// significant digits, non-finite numbers as null.
std::string to_json_text(const nlohmann::ordered_json& value);
/// "%.17g" with non-finite values spelled nan / inf.
std::string format_number(double v);

/// Parses arguments, runs one command and writes its output. Returns the exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace sesqui::cli
