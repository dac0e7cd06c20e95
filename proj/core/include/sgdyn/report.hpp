#pragma once

#include <string>
#include <vector>

namespace sgdyn {

/// Outcome of one exact-equality check. Witnesses are rendered strings in
/// deterministic order, so reports are byte-identical across runs.
struct CheckResult {
  std::string name;
  std::string identity;  // the algebraic law being checked
  bool passed = false;
  long long samples = 0;
  std::vector<std::string> witnesses;

  static CheckResult pass(std::string name, std::string identity, long long samples);
  static CheckResult fail(std::string name, std::string identity, long long samples,
                          std::vector<std::string> witnesses);
};

struct RunConfig {
  std::string suite;
  int depth = 4;
  int box = 3;
  std::string dictionary_path;
  std::string format = "text";  // text | json
  int jobs = 1;
  bool timings = false;  // include elapsed_ms in reports (breaks byte-identity)
};

struct Report {
  std::string suite;
  RunConfig config;
  std::vector<CheckResult> checks;
  long long elapsed_ms = 0;

  bool all_passed() const;
  std::string to_text() const;
  std::string to_json() const;
  std::string render(const std::string& format) const;
};

}  // namespace sgdyn
