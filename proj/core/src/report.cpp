#include "sgdyn/report.hpp"

#include <sstream>

#include "json.hpp"

namespace sgdyn {

CheckResult CheckResult::pass(std::string name, std::string identity, long long samples) {
  CheckResult r;
  r.name = std::move(name);
  r.identity = std::move(identity);
  r.passed = true;
  r.samples = samples;
  return r;
}

CheckResult CheckResult::fail(std::string name, std::string identity, long long samples,
                              std::vector<std::string> witnesses) {
  CheckResult r;
  r.name = std::move(name);
  r.identity = std::move(identity);
  r.passed = false;
  r.samples = samples;
  r.witnesses = std::move(witnesses);
  return r;
}

bool Report::all_passed() const {
  for (const auto& c : checks)
    if (!c.passed) return false;
  return true;
}

std::string Report::to_text() const {
  std::ostringstream os;
  os << "suite " << suite << " (depth=" << config.depth << ", box=" << config.box << ")\n";
  for (const auto& c : checks) {
    os << "  [" << (c.passed ? "pass" : "FAIL") << "] " << c.name << " -- " << c.identity
       << " (" << c.samples << " samples)\n";
    for (const auto& w : c.witnesses) os << "         witness: " << w << "\n";
  }
  os << (all_passed() ? "all checks passed" : "violations found") << "\n";
  if (config.timings) os << "elapsed_ms " << elapsed_ms << "\n";
  return os.str();
}

std::string Report::to_json() const {
  nlohmann::json j;
  j["suite"] = suite;
  j["config"] = {{"depth", config.depth},
                 {"box", config.box},
                 {"jobs", config.jobs},
                 {"format", config.format}};
  if (!config.dictionary_path.empty()) j["config"]["dictionary"] = config.dictionary_path;
  j["checks"] = nlohmann::json::array();
  for (const auto& c : checks) {
    nlohmann::json jc;
    jc["name"] = c.name;
    jc["ref"] = c.identity;
    jc["status"] = c.passed ? "pass" : "fail";
    jc["samples"] = c.samples;
    if (!c.witnesses.empty()) jc["witness"] = c.witnesses;
    j["checks"].push_back(jc);
  }
  j["passed"] = all_passed();
  if (config.timings) j["elapsed_ms"] = elapsed_ms;
  return j.dump(2);
}

std::string Report::render(const std::string& format) const {
  return format == "json" ? to_json() : to_text();
}

}  // namespace sgdyn
