#pragma once

#include <chrono>
#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

namespace poincare_deform {

enum class CheckStatus { Pass, Fail, ExpectedNonzero };

inline const char* status_name(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass: return "pass";
    case CheckStatus::Fail: return "fail";
    case CheckStatus::ExpectedNonzero: return "expected-nonzero";
  }
  return "?";
}

struct CheckResult {
  std::string id;                // stable machine id, e.g. "core.jacobi.p0.p1.p2"
  std::string claim;             // human-readable statement of what was checked
  CheckStatus status = CheckStatus::Fail;
  std::string order = "exact";   // "exact", "l^6", or "-" for numeric checks
  std::string residual_summary;  // e.g. "0", "max |entry| = 3e-12", or a symbol count
  double ms = 0.0;

  bool ok() const { return status != CheckStatus::Fail; }
};

struct VerificationReport {
  std::string suite;
  int order = 0;          // series order used by truncated sectors (0 = n/a)
  uint64_t seed = 0;      // RNG seed echoed back for reproducibility
  std::vector<CheckResult> checks;
  double wall_ms = 0.0;

  int passed() const {
    int n = 0;
    for (const auto& c : checks) n += c.ok();
    return n;
  }
  int failed() const { return static_cast<int>(checks.size()) - passed(); }
  bool all_ok() const { return failed() == 0; }

  std::string to_text() const {
    std::string out;
    out += "suite: " + suite + "  (order " + std::to_string(order) +
           ", seed " + std::to_string(seed) + ")\n";
    for (const auto& c : checks) {
      char line[160];
      std::snprintf(line, sizeof(line), "  [%-16s] %-52s %s\n", status_name(c.status),
                    c.id.c_str(), c.residual_summary.c_str());
      out += line;
    }
    char tail[128];
    std::snprintf(tail, sizeof(tail), "%d/%zu checks passed in %.1f ms\n", passed(),
                  checks.size(), wall_ms);
    out += tail;
    return out;
  }

  nlohmann::json to_json() const {
    nlohmann::json j;
    j["schema_version"] = "1";
    j["suite"] = suite;
    j["config"] = {{"order", order}, {"seed", seed}};
    j["checks"] = nlohmann::json::array();
    for (const auto& c : checks) {
      j["checks"].push_back({{"id", c.id},
                             {"claim", c.claim},
                             {"status", status_name(c.status)},
                             {"order", c.order},
                             {"residual", c.residual_summary},
                             {"ms", c.ms}});
    }
    j["totals"] = {{"passed", passed()}, {"failed", failed()}, {"count", checks.size()}};
    j["wall_ms"] = wall_ms;
    return j;
  }
};

// Small timing helper: runs the body, records elapsed milliseconds, and
// catches engine exceptions into a failed check instead of aborting a suite.
class CheckRunner {
 public:
  explicit CheckRunner(VerificationReport& rep) : rep_(rep) {}

  // body fills status/order/residual_summary on the provided CheckResult
  void run(const std::string& id, const std::string& claim,
           const std::function<void(CheckResult&)>& body) {
    CheckResult c;
    c.id = id;
    c.claim = claim;
    auto t0 = std::chrono::steady_clock::now();
    try {
      body(c);
    } catch (const std::exception& e) {
      c.status = CheckStatus::Fail;
      c.residual_summary = std::string("exception: ") + e.what();
    }
    c.ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    rep_.checks.push_back(std::move(c));
  }

  // Convenience: claim holds iff `zero` is true.
  void expect_zero(const std::string& id, const std::string& claim, bool zero,
                   const std::string& order = "exact") {
    run(id, claim, [&](CheckResult& c) {
      c.status = zero ? CheckStatus::Pass : CheckStatus::Fail;
      c.order = order;
      c.residual_summary = zero ? "0" : "nonzero";
    });
  }

  // Convenience: a control quantity that must NOT vanish.
  void expect_nonzero(const std::string& id, const std::string& claim, bool nonzero,
                      const std::string& order = "exact") {
    run(id, claim, [&](CheckResult& c) {
      c.status = nonzero ? CheckStatus::ExpectedNonzero : CheckStatus::Fail;
      c.order = order;
      c.residual_summary = nonzero ? "nonzero (as required)" : "0 (control collapsed)";
    });
  }

 private:
  VerificationReport& rep_;
};

}  // namespace poincare_deform
