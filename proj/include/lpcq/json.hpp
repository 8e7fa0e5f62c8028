#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "lpcq/exponents.hpp"
#include "lpcq/forms.hpp"
#include "lpcq/gelfand.hpp"
#include "lpcq/spaces.hpp"

namespace lpcq {

using nlohmann::json;

/// Input that does not match the expected shape; `pointer` locates the offending value.
class SchemaError : public std::runtime_error {
 public:
  SchemaError(std::string pointer, const std::string& what)
      : std::runtime_error(pointer + ": " + what), pointer_(std::move(pointer)) {}
  const std::string& pointer() const { return pointer_; }

 private:
  std::string pointer_;
};

namespace io {

inline const json& at(const json& j, const json::json_pointer& ptr, const std::string& key) {
  if (!j.is_object() || !j.contains(key)) throw SchemaError((ptr / key).to_string(), "missing field");
  return j.at(key);
}

inline Rational rational(const json& j, const json::json_pointer& ptr) {
  try {
    if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_object()) return Rational(at(j, ptr, "num").get<std::int64_t>(), at(j, ptr, "den").get<std::int64_t>());
  } catch (const SchemaError&) {
    throw;
  } catch (const std::exception& e) {
    throw SchemaError(ptr.to_string(), e.what());
  }
  throw SchemaError(ptr.to_string(), "expected a rational (integer, \"n/d\" or {\"num\",\"den\"})");
}

inline json rational(const Rational& r) { return {{"num", r.numerator()}, {"den", r.denominator()}}; }

inline Exponent exponent(const json& j, const json::json_pointer& ptr) {
  if (j.is_string()) {
    try {
      return Exponent::parse(j.get<std::string>());
    } catch (const std::exception& e) {
      throw SchemaError(ptr.to_string(), e.what());
    }
  }
  try {
    return Exponent(rational(j, ptr));
  } catch (const SchemaError&) {
    throw;
  } catch (const std::exception& e) {
    throw SchemaError(ptr.to_string(), e.what());
  }
}

inline json exponent(const Exponent& p) { return p.is_infinite() ? json("inf") : rational(p.value()); }

inline json interval(const ExponentInterval& iv) {
  if (iv.is_empty()) return {{"empty", true}};
  return {{"lo", exponent(iv.lower())},
          {"hi", exponent(iv.upper())},
          {"lo_closed", iv.lower_closed()},
          {"hi_closed", iv.upper_closed()}};
}

inline DiscreteSpace space(const json& j, const json::json_pointer& ptr) {
  const auto& w = at(j, ptr, "weights");
  if (!w.is_array() || w.empty()) throw SchemaError((ptr / "weights").to_string(), "expected a nonempty array of masses");
  std::vector<double> weights;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (!w[i].is_number()) throw SchemaError((ptr / "weights" / i).to_string(), "expected a number");
    weights.push_back(w[i].get<double>());
  }
  try {
    return DiscreteSpace(std::move(weights));
  } catch (const std::exception& e) {
    throw SchemaError((ptr / "weights").to_string(), e.what());
  }
}

inline json space(const DiscreteSpace& s) { return {{"weights", s.weights()}}; }

inline Domain domain(const json& j, const json::json_pointer& ptr) {
  if (j.is_string()) {
    auto s = j.get<std::string>();
    if (s == "unit_interval") return Domain::UnitInterval;
    if (s == "half_line") return Domain::HalfLine;
  }
  throw SchemaError(ptr.to_string(), "expected \"unit_interval\" or \"half_line\"");
}

inline SymbolicFunction symbolic(const json& j, const json::json_pointer& ptr) {
  Domain d = j.contains("domain") ? domain(j["domain"], ptr / "domain") : Domain::UnitInterval;
  const auto& terms = at(j, ptr, "terms");
  if (!terms.is_array()) throw SchemaError((ptr / "terms").to_string(), "expected an array");
  std::vector<PowerTerm> out;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    auto tp = ptr / "terms" / i;
    const auto& t = terms[i];
    PowerTerm term;
    term.coeff = rational(at(t, tp, "c"), tp / "c");
    term.exponent = rational(at(t, tp, "a"), tp / "a");
    if (t.contains("support")) {
      auto s = t["support"];
      if (s == "near_zero") term.support = Support::NearZero;
      else if (s == "tail") term.support = Support::Tail;
      else throw SchemaError((tp / "support").to_string(), "expected \"near_zero\" or \"tail\"");
    }
    out.push_back(term);
  }
  try {
    return SymbolicFunction(d, std::move(out));
  } catch (const std::exception& e) {
    throw SchemaError((ptr / "terms").to_string(), e.what());
  }
}

inline json symbolic(const SymbolicFunction& f) {
  json terms = json::array();
  for (const auto& t : f.terms())
    terms.push_back({{"c", rational(t.coeff)}, {"a", rational(t.exponent)}, {"support", to_string(t.support)}});
  return {{"domain", to_string(f.domain())}, {"terms", terms}};
}

inline DiscreteFunction discrete(const json& j, const json::json_pointer& ptr, const DiscreteSpace& s) {
  const auto& re = at(j, ptr, "re");
  if (!re.is_array()) throw SchemaError((ptr / "re").to_string(), "expected an array");
  std::vector<Complex> v(re.size());
  for (std::size_t i = 0; i < re.size(); ++i) {
    if (!re[i].is_number()) throw SchemaError((ptr / "re" / i).to_string(), "expected a number");
    v[i] = re[i].get<double>();
  }
  if (j.contains("im")) {
    const auto& im = j["im"];
    if (!im.is_array() || im.size() != re.size())
      throw SchemaError((ptr / "im").to_string(), "expected an array as long as \"re\"");
    for (std::size_t i = 0; i < im.size(); ++i) {
      if (!im[i].is_number()) throw SchemaError((ptr / "im" / i).to_string(), "expected a number");
      v[i] += Complex(0.0, im[i].get<double>());
    }
  }
  try {
    return DiscreteFunction(s, std::move(v));
  } catch (const std::exception& e) {
    throw SchemaError((ptr / "re").to_string(), e.what());
  }
}

inline json discrete(const DiscreteFunction& f) {
  std::vector<double> re, im;
  for (auto z : f.values()) {
    re.push_back(z.real());
    im.push_back(z.imag());
  }
  return {{"re", re}, {"im", im}};
}

/// A function is symbolic when it has "terms", discrete when it has "re".
/// Discrete functions need the document's space.
inline Function function(const json& j, const json::json_pointer& ptr, const DiscreteSpace* s) {
  if (j.is_object() && j.contains("terms")) return symbolic(j, ptr);
  if (j.is_object() && j.contains("re")) {
    if (!s) throw SchemaError(ptr.to_string(), "discrete function without a \"space\" in the document");
    return discrete(j, ptr, *s);
  }
  throw SchemaError(ptr.to_string(), "expected a symbolic {\"terms\"} or discrete {\"re\",\"im\"} function");
}

inline json function(const Function& f) {
  if (const auto* d = std::get_if<DiscreteFunction>(&f)) return discrete(*d);
  return symbolic(std::get<SymbolicFunction>(f));
}

inline FormWeight form_weight(const json& j, const json::json_pointer& ptr, const DiscreteSpace* s) {
  Exponent p = exponent(at(j, ptr, "p"), ptr / "p");
  Function psi = function(at(j, ptr, "psi"), ptr / "psi", s);
  try {
    return FormWeight::make(std::move(psi), p);
  } catch (const std::exception& e) {
    throw SchemaError((ptr / "psi").to_string(), e.what());
  }
}

}  // namespace io
}  // namespace lpcq
