#pragma once

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

namespace lpcq {

/// Outcome of one property check over a batch of samples.
///
/// `worst_slack` is the smallest observed margin: for an inequality
/// lhs <= rhs the margin is rhs - lhs, for an identity it is -|lhs - rhs|.
/// The check passes while worst_slack >= -tolerance. `witness` holds the
/// sample that produced the worst margin.
struct Check {
  std::string name;
  double tolerance = 0.0;
  double worst_slack = std::numeric_limits<double>::infinity();
  nlohmann::json witness;
  std::size_t samples = 0;

  bool passed() const { return !(worst_slack < -tolerance); }

  void inequality(double lhs, double rhs, const nlohmann::json& at = {}) { record(rhs - lhs, at); }
  void identity(double lhs, double rhs, const nlohmann::json& at = {}) { record(-std::abs(lhs - rhs), at); }
  /// Relative identity: |lhs - rhs| measured against max(1, |rhs|).
  void relative_identity(double lhs, double rhs, const nlohmann::json& at = {}) {
    record(-std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs)), at);
  }
  void flag(bool ok, const nlohmann::json& at = {}) { record(ok ? 0.0 : -std::numeric_limits<double>::infinity(), at); }

  void record(double slack, const nlohmann::json& at) {
    ++samples;
    if (std::isnan(slack)) slack = -std::numeric_limits<double>::infinity();
    if (slack < worst_slack) {
      worst_slack = slack;
      witness = at;
    }
  }
};

struct Report {
  Report() = default;
  explicit Report(std::string s) : subject(std::move(s)) {}

  std::string subject;
  std::deque<Check> checks;  // stable references across add()

  Check& add(std::string name, double tolerance) {
    Check c;
    c.name = std::move(name);
    c.tolerance = tolerance;
    checks.push_back(std::move(c));
    return checks.back();
  }

  bool passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed(); });
  }

  const Check* find(const std::string& name) const {
    for (const auto& c : checks)
      if (c.name == name) return &c;
    return nullptr;
  }
};

inline nlohmann::json slack_to_json(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v == 0.0 ? 0.0 : v;  // no "-0.0" in reports
}

inline void to_json(nlohmann::json& j, const Check& c) {
  j = nlohmann::json{{"axiom", c.name},
                     {"passed", c.passed()},
                     {"worst_slack", slack_to_json(c.worst_slack)},
                     {"tolerance", c.tolerance},
                     {"samples", c.samples},
                     {"witness", c.witness}};
}

inline void to_json(nlohmann::json& j, const Report& r) {
  j = nlohmann::json{{"subject", r.subject}, {"passed", r.passed()}, {"checks", r.checks}};
}

}  // namespace lpcq
