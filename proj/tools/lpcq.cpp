// lpcq: batch front end for the library. Reads one JSON document, runs one
// command, writes a JSON or CSV report.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <boost/program_options.hpp>
#include <nlohmann/json.hpp>

#include "lpcq/lpcq.hpp"
#include "lpcq/suite.hpp"

namespace po = boost::program_options;
using nlohmann::json;
using namespace lpcq;

namespace {

constexpr int kOk = 0;
constexpr int kPropertyFailure = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string command;
  std::string input;
  std::string out;
  std::string format = "json";
  std::optional<std::string> p;
  std::optional<std::uint64_t> seed;
  std::optional<double> tol;
  std::string mode = "optimize";
};

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

struct Outcome {
  json report;
  std::optional<Table> table;
  bool passed = true;
  json worst;  // worst witness when a property fails
};

// ---------------------------------------------------------------------------
// input document

struct Document {
  json root;
  std::optional<DiscreteSpace> space;
};

Document load(const std::string& path) {
  if (path.empty()) throw UsageError("--input is required for this command");
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open " + path);
  Document d;
  try {
    d.root = json::parse(in);
  } catch (const json::parse_error& e) {
    throw SchemaError("", std::string("not valid JSON: ") + e.what());
  }
  if (!d.root.is_object()) throw SchemaError("", "expected a JSON object");
  if (d.root.contains("space")) d.space = io::space(d.root["space"], json::json_pointer("/space"));
  return d;
}

const DiscreteSpace* space_of(const Document& d) { return d.space ? &*d.space : nullptr; }

Exponent exponent_of(const Document& d, const RunConfig& cfg) {
  if (cfg.p) {
    try {
      return Exponent::parse(*cfg.p);
    } catch (const std::exception& e) {
      throw UsageError(std::string("--p: ") + e.what());
    }
  }
  return io::exponent(io::at(d.root, json::json_pointer(""), "p"), json::json_pointer("/p"));
}

Function function_of(const Document& d) {
  return io::function(io::at(d.root, json::json_pointer(""), "function"), json::json_pointer("/function"), space_of(d));
}

std::vector<Function> functions_of(const Document& d) {
  const auto& arr = io::at(d.root, json::json_pointer(""), "functions");
  if (!arr.is_array()) throw SchemaError("/functions", "expected an array");
  std::vector<Function> out;
  for (std::size_t i = 0; i < arr.size(); ++i)
    out.push_back(io::function(arr[i], json::json_pointer("/functions") / i, space_of(d)));
  return out;
}

std::vector<SymbolicFunction> symbolic_functions_of(const Document& d) {
  std::vector<SymbolicFunction> out;
  auto all = functions_of(d);
  for (std::size_t i = 0; i < all.size(); ++i) {
    const auto* s = std::get_if<SymbolicFunction>(&all[i]);
    if (!s) throw SchemaError("/functions/" + std::to_string(i), "expected a symbolic function");
    out.push_back(*s);
  }
  return out;
}

FormWeight weight_of(const Document& d, const json& j, const json::json_pointer& ptr, bool enforce_ball) {
  Exponent p = io::exponent(io::at(j, ptr, "p"), ptr / "p");
  Function psi = io::function(io::at(j, ptr, "psi"), ptr / "psi", space_of(d));
  try {
    return enforce_ball ? FormWeight::make(std::move(psi), p) : FormWeight::candidate(std::move(psi), p);
  } catch (const std::domain_error& e) {
    throw SchemaError((ptr / "psi").to_string(), e.what());
  }
}

std::uint64_t seed_of(const RunConfig& cfg) { return cfg.seed.value_or(1); }

json number(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (std::isnan(x)) return "nan";
  return x;
}

std::string cell(const json& v) {
  std::string s = v.is_string() ? v.get<std::string>() : v.dump();
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

void flatten(const json& j, const std::string& path, Table& t) {
  if (j.is_object() && !j.empty()) {
    for (const auto& [k, v] : j.items()) flatten(v, path + "/" + k, t);
  } else if (j.is_array() && !j.empty()) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], path + "/" + std::to_string(i), t);
  } else {
    t.rows.push_back({path, cell(j)});
  }
}

Table report_table(const Report& r) {
  Table t{{"subject", "axiom", "passed", "worst_slack", "tolerance", "samples"}, {}};
  for (const auto& c : r.checks)
    t.rows.push_back({r.subject, c.name, c.passed() ? "true" : "false", cell(slack_to_json(c.worst_slack)),
                      cell(c.tolerance), std::to_string(c.samples)});
  return t;
}

json worst_of(const Report& r) {
  const Check* worst = nullptr;
  for (const auto& c : r.checks)
    if (!c.passed() && (!worst || c.worst_slack < worst->worst_slack)) worst = &c;
  return worst ? json(*worst) : json(nullptr);
}

// ---------------------------------------------------------------------------
// commands

Outcome cmd_norm(const RunConfig& cfg) {
  auto d = load(cfg.input);
  auto p = exponent_of(d, cfg);
  auto f = function_of(d);
  double v = norm(f, p);
  Outcome o;
  o.report = {{"command", "norm"}, {"p", p.to_string()}, {"function", io::function(f)}, {"value", number(v)},
              {"diverges", std::isinf(v)}};
  return o;
}

Outcome cmd_espace(const RunConfig& cfg) {
  auto d = load(cfg.input);
  auto f = function_of(d);
  Outcome o;
  o.report = {{"command", "espace"}, {"function", io::function(f)}};
  if (const auto* s = std::get_if<SymbolicFunction>(&f)) {
    auto E = exponent_set(*s);
    o.report["E"] = io::interval(E);
    o.report["E_text"] = E.to_string();
  } else {
    // every function on finitely many atoms of finite mass lies in every L^q
    o.report["E"] = io::interval(full_exponent_range());
    o.report["E_text"] = full_exponent_range().to_string();
  }
  return o;
}

Outcome cmd_forms_check(const RunConfig& cfg) {
  auto d = load(cfg.input);
  auto w = weight_of(d, io::at(d.root, json::json_pointer(""), "weight"), json::json_pointer("/weight"), false);
  Outcome o;
  o.report = {{"command", "forms-check"}, {"p", w.p().to_string()}, {"psi", io::function(w.psi())}};
  if (w.p().reciprocal() > Rational(1, 2)) {
    // below p = 2 a weight bounded below gives an unbounded form
    if (w.is_discrete()) throw UsageError("the p < 2 divergence check needs a symbolic weight on the unit interval");
    double alpha = lower_bound_near_zero(w.symbolic());
    if (!(alpha > 0.0)) throw UsageError("weight has no positive lower bound near zero");
    auto wit = divergence_witness(w.p(), w, alpha);
    o.report["diverges"] = wit.truncated.exceeded;
    o.report["witness"] = {{"f", io::symbolic(wit.f)},
                           {"f_text", wit.f.to_string()},
                           {"in_lp", wit.in_lp},
                           {"in_l2", wit.in_l2},
                           {"exceeded_at_halving", wit.truncated.at_halving},
                           {"last_value", number(wit.truncated.last_value)},
                           {"growth_rate", number(wit.growth_rate)},
                           {"monotone", wit.monotone}};
    o.passed = wit.truncated.exceeded && wit.in_lp && !wit.in_l2;
    if (!o.passed) o.worst = o.report["witness"];
    return o;
  }
  auto rep = check_form_axioms(w, seed_of(cfg));
  o.report["ball_norm"] = number(w.ball_norm());
  o.report["in_ball"] = w.in_ball();
  o.report["axioms"] = rep;
  o.passed = rep.passed() && w.in_ball();
  if (w.is_discrete() && w.in_ball()) {
    auto u = uniqueness_check(w, cfg.tol.value_or(1e-9));
    o.report["normalized"] = {{"target", u.target},         {"value", u.value},
                              {"gap", u.gap},               {"is_normalized", u.normalized},
                              {"constant", u.constant},     {"max_deviation", u.max_deviation},
                              {"deviation_bound", u.deviation_bound}, {"passed", u.passed}};
    o.passed = o.passed && u.passed;
  }
  o.table = report_table(rep);
  if (!o.passed) o.worst = rep.passed() ? json{{"in_ball", w.in_ball()}} : worst_of(rep);
  return o;
}

Outcome cmd_seminorm(const RunConfig& cfg, const std::string& which) {
  auto d = load(cfg.input);
  auto p = exponent_of(d, cfg);
  auto f = function_of(d);
  NormMode mode;
  try {
    mode = parse_norm_mode(cfg.mode);
  } catch (const std::exception& e) {
    throw UsageError(std::string("--mode: ") + e.what());
  }
  const auto seed = seed_of(cfg);
  NormResult r = which == "alpha"  ? alpha_norm(f, p, mode, seed)
                 : which == "beta" ? beta_norm(f, p, mode, seed)
                                   : gamma_norm(f, p, mode, seed);
  Outcome o;
  o.report = {{"command", which}, {"p", p.to_string()}, {"function", io::function(f)}, {"result", r},
              {"diverges", std::isinf(r.value)}};
  return o;
}

Outcome cmd_gns(const RunConfig& cfg) {
  auto d = load(cfg.input);
  auto w = weight_of(d, io::at(d.root, json::json_pointer(""), "weight"), json::json_pointer("/weight"), true);
  Outcome o;
  o.report = {{"command", "gns"}, {"p", w.p().to_string()}};
  if (w.is_discrete()) {
    auto m = GnsModel::build(w);
    o.report["model"] = m;
    if (d.root.contains("function")) {
      auto f = function_of(d);
      const auto* df = std::get_if<DiscreteFunction>(&f);
      if (!df) throw SchemaError("/function", "a discrete weight needs a discrete function");
      o.report["operator"] = represent(m, *df);
      o.report["domain"] = domain_check(m, *df);
    }
    auto rep = representation_axioms_check(m, seed_of(cfg));
    o.report["axioms"] = rep;
    o.passed = rep.passed();
    o.table = report_table(rep);
    if (!o.passed) o.worst = worst_of(rep);
    return o;
  }
  std::vector<SymbolicFunction> fs;
  if (d.root.contains("functions")) fs = symbolic_functions_of(d);
  if (d.root.contains("function")) {
    auto f = function_of(d);
    const auto* sf = std::get_if<SymbolicFunction>(&f);
    if (!sf) throw SchemaError("/function", "a symbolic weight needs a symbolic function");
    fs.insert(fs.begin(), *sf);
  }
  if (fs.empty()) throw UsageError("symbolic gns needs \"function\" or a nonempty \"functions\"");
  json rows = json::array();
  Table t{{"f", "in_domain", "bounded_on_support", "in_lp", "linf_mu_w_sq"}, {}};
  for (const auto& f : fs) {
    auto r = domain_check(w, f);
    rows.push_back({{"f", f.to_string()}, {"report", r}});
    t.rows.push_back({cell(f.to_string()), r.in_domain ? "true" : "false", r.bounded_on_support ? "true" : "false",
                      r.in_lp ? "true" : "false", cell(number(r.linf_mu_w_sq))});
  }
  o.report["domain"] = rows;
  o.table = t;
  return o;
}

Outcome cmd_gelfand(const RunConfig& cfg) {
  auto d = load(cfg.input);
  auto f = function_of(d);
  const auto* df = std::get_if<DiscreteFunction>(&f);
  if (!df) throw SchemaError("/function", "the embedding works on discrete functions");
  std::vector<FormWeight> ws;
  if (d.root.contains("weights")) {
    const auto& arr = d.root["weights"];
    if (!arr.is_array() || arr.empty()) throw SchemaError("/weights", "expected a nonempty array");
    for (std::size_t i = 0; i < arr.size(); ++i)
      ws.push_back(weight_of(d, arr[i], json::json_pointer("/weights") / i, true));
  } else {
    auto p = exponent_of(d, cfg);
    ws = {extremal_weight(*df, p), normalized_weight(df->space(), p)};
  }
  const double tol = cfg.tol.value_or(1e-6);
  auto t = transform(*df, ws, seed_of(cfg), 16, tol);
  Outcome o;
  o.report = {{"command", "gelfand"}, {"p", ws.front().p().to_string()}, {"family", measures_from_forms(ws)},
              {"transform", t}};
  o.passed = t.linear && t.injective && t.multiplicative && t.involutive && (!t.extremal_included || t.isometric);
  if (!o.passed) o.worst = o.report["transform"];
  return o;
}

Outcome cmd_gamma_table(const RunConfig& cfg) {
  auto d = load(cfg.input);
  auto p = exponent_of(d, cfg);
  auto fs = symbolic_functions_of(d);
  if (fs.empty()) throw UsageError("empty corpus: \"functions\" has no entries");
  Outcome o;
  Table t{{"f", "g", "f_in_lp", "g_in_lp", "gamma1", "gamma2", "gamma_w", "gamma_s", "r", "s", "product", "product_in_lp"},
          {}};
  json rows = json::array();
  const bool weak = p.reciprocal() <= Rational(1, 2);
  for (const auto& f : fs)
    for (const auto& g : fs) {
      auto v = classify_pair(f, g, p, seed_of(cfg));
      auto prod = multiply(f, g);
      json row = v;
      row["f"] = f.to_string();
      row["g"] = g.to_string();
      row["product_text"] = prod.to_string();
      row["product_in_lp"] = in_lp(prod, p);
      rows.push_back(row);
      auto b = [](bool x) { return std::string(x ? "true" : "false"); };
      t.rows.push_back({cell(f.to_string()), cell(g.to_string()), b(v.f_in_lp), b(v.g_in_lp), b(v.in_gamma1), b(v.in_gamma2),
                        weak ? b(v.in_gamma_w) : "n/a", b(v.in_gamma_s), v.witness ? v.witness->first.to_string() : "",
                        v.witness ? v.witness->second.to_string() : "", cell(prod.to_string()), b(in_lp(prod, p))});
      if (v.in_gamma2 && !v.in_gamma1) {
        o.passed = false;
        o.worst = row;
      }
    }
  o.report = {{"command", "gamma-table"}, {"p", p.to_string()}, {"pairs", rows}};
  o.table = t;
  return o;
}

Outcome cmd_witness_search(const RunConfig& cfg) {
  auto d = load(cfg.input);
  auto p = exponent_of(d, cfg);
  Domain dom = io::domain(io::at(d.root, json::json_pointer(""), "domain"), json::json_pointer("/domain"));
  Rational lo(-4), hi(4), step(1, 2);
  if (d.root.contains("grid")) {
    const auto& g = d.root["grid"];
    json::json_pointer gp("/grid");
    lo = io::rational(io::at(g, gp, "lo"), gp / "lo");
    hi = io::rational(io::at(g, gp, "hi"), gp / "hi");
    step = io::rational(io::at(g, gp, "step"), gp / "step");
    if (step <= Rational(0)) throw SchemaError("/grid/step", "step must be positive");
  }
  auto s = distributivity_witness_search(dom, p, exponent_grid(lo, hi, step));
  Outcome o;
  o.report = {{"command", "witness-search"},
              {"p", p.to_string()},
              {"domain", to_string(dom)},
              {"grid", {{"lo", io::rational(lo)}, {"hi", io::rational(hi)}, {"step", io::rational(step)}}},
              {"candidates", s.candidates},
              {"triples", s.triples},
              {"status", s.witness ? "found" : "exhausted"}};
  if (s.witness) {
    const auto& w = *s.witness;
    o.report["witness"] = {{"f", w.f.to_string()},
                           {"g", w.g.to_string()},
                           {"h", w.h.to_string()},
                           {"split_fg", {w.split_fg.first.to_string(), w.split_fg.second.to_string()}},
                           {"split_fh", {w.split_fh.first.to_string(), w.split_fh.second.to_string()}},
                           {"E_g_plus_h", w.e_sum.to_string()}};
  }
  return o;
}

Outcome cmd_suite(const RunConfig& cfg) {
  if (!cfg.seed) throw UsageError("suite needs an explicit --seed");
  SuiteOptions opt;
  opt.seed = *cfg.seed;
  if (cfg.tol) opt.tol = *cfg.tol;
  auto entries = run_suite(opt);
  Outcome o;
  o.report = suite_to_json(entries);
  o.report["seed"] = opt.seed;
  Table t{{"property", "statement", "axiom", "passed", "worst_slack", "tolerance", "samples"}, {}};
  for (const auto& e : entries) {
    for (const auto& c : e.report.checks)
      t.rows.push_back({e.property, cell(e.reference), c.name, c.passed() ? "true" : "false", cell(slack_to_json(c.worst_slack)),
                        cell(c.tolerance), std::to_string(c.samples)});
    if (!e.report.passed()) {
      o.passed = false;
      if (o.worst.is_null()) o.worst = {{"property", e.property}, {"check", worst_of(e.report)}};
    }
  }
  o.table = t;
  return o;
}

Outcome dispatch(const RunConfig& cfg) {
  const auto& c = cfg.command;
  if (c == "norm") return cmd_norm(cfg);
  if (c == "espace") return cmd_espace(cfg);
  if (c == "forms-check") return cmd_forms_check(cfg);
  if (c == "alpha" || c == "beta" || c == "gamma") return cmd_seminorm(cfg, c);
  if (c == "gns") return cmd_gns(cfg);
  if (c == "gelfand") return cmd_gelfand(cfg);
  if (c == "gamma-table") return cmd_gamma_table(cfg);
  if (c == "witness-search") return cmd_witness_search(cfg);
  if (c == "suite") return cmd_suite(cfg);
  throw UsageError("unknown command: " + c);
}

std::string render(const Outcome& o, const std::string& format) {
  if (format == "json") return o.report.dump(2) + "\n";
  Table t;
  if (o.table) {
    t = *o.table;
  } else {
    t.header = {"key", "value"};
    flatten(o.report, "", t);
  }
  std::ostringstream os;
  for (std::size_t i = 0; i < t.header.size(); ++i) os << (i ? "," : "") << t.header[i];
  os << "\n";
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << row[i];
    os << "\n";
  }
  return os.str();
}

const char* kCommands =
    "commands:\n"
    "  norm            ||f||_p of \"function\"\n"
    "  espace          the set of q with f in L^q\n"
    "  forms-check     axioms of the form given by \"weight\" (divergence witness when p < 2)\n"
    "  alpha|beta|gamma  the seminorms of \"function\" (--mode closed|optimize)\n"
    "  gns             GNS model of a discrete \"weight\", or domain checks for a symbolic one\n"
    "  gelfand         embedding of \"function\" through \"weights\"\n"
    "  gamma-table     multiplication domains for every pair in \"functions\"\n"
    "  witness-search  distributivity counterexample search on \"domain\"\n"
    "  suite           every library invariant on seeded samples (needs --seed)\n";

}  // namespace

int main(int argc, char** argv) {
  RunConfig cfg;
  po::options_description opts("options");
  std::string p, seed;
  double tol = 0.0;
  opts.add_options()("help,h", "show usage")("input", po::value(&cfg.input), "input JSON document")(
      "p", po::value(&p), "exponent, overrides the document (e.g. 4, 5/2, inf)")(
      "seed", po::value(&seed), "random seed")("tol", po::value(&tol), "tolerance override")(
      "format", po::value(&cfg.format)->default_value("json"), "json or csv")(
      "out", po::value(&cfg.out), "write the report here instead of stdout")(
      "mode", po::value(&cfg.mode)->default_value("optimize"), "closed or optimize (seminorm commands)");
  po::options_description hidden;
  hidden.add_options()("command", po::value(&cfg.command));
  po::options_description all;
  all.add(opts).add(hidden);
  po::positional_options_description pos;
  pos.add("command", 1);

  try {
    po::variables_map vm;
    po::store(po::command_line_parser(argc, argv).options(all).positional(pos).run(), vm);
    po::notify(vm);
    if (vm.count("help") || cfg.command.empty()) {
      std::cout << "usage: lpcq <command> [options]\n\n" << kCommands << "\n" << opts;
      return vm.count("help") ? kOk : kUsage;
    }
    if (cfg.format != "json" && cfg.format != "csv") throw UsageError("--format must be json or csv");
    if (vm.count("p")) cfg.p = p;
    if (vm.count("tol")) {
      if (!(tol > 0.0)) throw UsageError("--tol must be positive");
      cfg.tol = tol;
    }
    if (vm.count("seed")) {
      try {
        std::size_t used = 0;
        cfg.seed = std::stoull(seed, &used);
        if (used != seed.size()) throw std::invalid_argument(seed);
      } catch (const std::exception&) {
        throw UsageError("--seed must be a nonnegative integer");
      }
    }

    Outcome o = dispatch(cfg);
    std::string text = render(o, cfg.format);
    if (cfg.out.empty()) {
      std::cout << text;
    } else {
      std::ofstream out(cfg.out, std::ios::binary);
      if (!out) throw UsageError("cannot write " + cfg.out);
      out << text;
    }
    if (!o.passed) {
      std::cerr << "property failure; worst witness:\n" << o.worst.dump(2) << "\n";
      return kPropertyFailure;
    }
    return kOk;
  } catch (const po::error& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const SchemaError& e) {
    std::cerr << "schema error at " << e.what() << "\n";
    return kUsage;
  } catch (const std::domain_error& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  }
}
