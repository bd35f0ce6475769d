#pragma once

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "crinv/convexity/json.hpp"
#include "crinv/multitype/json.hpp"
#include "crinv/planar/automorphism.hpp"
#include "crinv/poly/parse.hpp"

namespace crinv::cli {

using convexity::ComplexVector;
using poly::Polynomial;

enum class Command { Classify, Multitype, KN, Model, NormalForm, GammaTable };

struct RunConfig {
  Command command = Command::Classify;
  std::optional<std::string> expr;
  std::optional<std::string> file;
  int n = 1;
  bool json = false;
  // 0 keeps the per-dimension default.
  int grid = 0;
  int refinements = 8;
  double tol = 1e-8;
  bool permute = false;
  int max_denominator = 1000;
  // model
  int k = 0;
  int l = 0;
  std::string a = "0";
  // gamma-table ranges "lo..hi" or a single value; empty l_range means every even l <= k.
  std::string k_range;
  std::string l_range;
};

inline void validate(const RunConfig& c) {
  if (!(c.tol > 0)) throw PreconditionError("--tol must be positive");
  if (c.grid != 0 && c.grid < 8) throw PreconditionError("--grid must be at least 8");
  if (c.refinements < 0) throw PreconditionError("--refine must be nonnegative");
  if (c.max_denominator < 1) throw PreconditionError("--max-denominator must be positive");
  const bool needs_input = c.command != Command::Model && c.command != Command::GammaTable;
  if (needs_input && c.expr.has_value() == c.file.has_value())
    throw PreconditionError("exactly one of --expr and --file is required");
  if (needs_input && c.n < 1) throw PreconditionError("--n must be at least 1");
}

namespace detail {

inline std::string read_input(const RunConfig& c) {
  if (c.expr) return *c.expr;
  std::ifstream in(*c.file);
  if (!in) throw PreconditionError("cannot read input file '" + *c.file + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline int parse_int(std::string_view s, std::size_t offset) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) throw ParseError(offset, "expected an integer");
  return v;
}

// "lo..hi" or "v".
inline std::pair<int, int> parse_range(std::string_view s) {
  auto dots = s.find("..");
  if (dots == std::string_view::npos) {
    int v = parse_int(s, 0);
    return {v, v};
  }
  int lo = parse_int(s.substr(0, dots), 0), hi = parse_int(s.substr(dots + 2), dots + 2);
  if (lo > hi) throw ParseError(0, "empty range '" + std::string(s) + "'");
  return {lo, hi};
}

inline Rational parse_rational(std::string_view s) {
  auto slash = s.find('/');
  Rational num(parse_int(s.substr(0, slash), 0));
  if (slash == std::string_view::npos) return num;
  int den = parse_int(s.substr(slash + 1), slash + 1);
  if (den == 0) throw ParseError(slash + 1, "zero denominator");
  return num / den;
}

inline std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string s;
  for (std::size_t i = 0; i < parts.size(); ++i) s += (i ? sep : "") + parts[i];
  return s;
}

inline std::string format_double(double x) { return nlohmann::json(x).dump(); }

inline std::string format_vector(const ComplexVector& c) {
  std::vector<std::string> parts;
  for (const auto& x : c) parts.push_back("(" + format_double(x.real()) + ", " + format_double(x.imag()) + ")");
  return "[" + join(parts, ", ") + "]";
}

inline void emit(std::ostream& out, const RunConfig& c, const nlohmann::json& j, const std::string& text) {
  if (c.json) out << j.dump(2) << '\n';
  else out << text;
}

inline void classify(const RunConfig& c, std::ostream& out) {
  if (c.n != 1) throw PreconditionError("classify works in C^2, so --n must be 1");
  auto r = planar::analyze_planar(poly::parse_defining_equation(read_input(c), 1));
  const auto& inv = r.normalized.invariants;
  std::ostringstream t;
  t << "k: " << inv.k << "\ne: " << inv.e << "\nd: " << (inv.d ? std::to_string(*inv.d) : "undefined")
    << "\nmodel: " << to_string(r.model.tag) << "\nnormal form branch: " << to_string(r.normal_form.branch)
    << "\nmu0: " << (r.aut.mu0 ? std::to_string(*r.aut.mu0) : "undefined") << "\naut: " << to_string(r.aut.tag)
    << (r.aut.tag == planar::AutTag::Finite ? "(" + std::to_string(*r.aut.mu0) + ")" : "")
    << "\naut description: " << r.aut.description << "\ntruncation degree: " << r.truncation_degree << '\n';
  emit(out, c, planar::to_json(r), t.str());
}

inline void normal_form(const RunConfig& c, std::ostream& out) {
  if (c.n != 1) throw PreconditionError("normal-form works in C^2, so --n must be 1");
  auto leading = planar::extract_leading(poly::parse_defining_equation(read_input(c), 1));
  auto model = planar::classify_model(planar::normalize_leading(leading.p));
  auto report = planar::check_normal_form(leading, model);
  nlohmann::json failures = nlohmann::json::array();
  std::ostringstream t;
  t << "branch: " << to_string(report.branch) << "\npassed: " << (report.passed() ? "true" : "false") << '\n';
  for (const auto& f : report.failures) {
    failures.push_back({{"condition", f.condition}, {"j", f.j}, {"l", f.l}, {"m", f.m}});
    t << "violated: " << f.condition << " at (j, l, m) = (" << f.j << ", " << f.l << ", " << f.m << ")\n";
  }
  nlohmann::json j = {{"branch", to_string(report.branch)}, {"passed", report.passed()}, {"failures", failures}};
  emit(out, c, j, t.str());
}

inline multitype::InferOptions infer_options(const RunConfig& c) {
  multitype::InferOptions o;
  o.permute = c.permute;
  o.max_denominator = c.max_denominator;
  return o;
}

inline std::string multitype_text(const std::vector<std::optional<Rational>>& m) {
  std::vector<std::string> parts;
  for (const auto& x : m) parts.push_back(x ? to_string(*x) : "inf");
  return "(" + join(parts, ", ") + ")";
}

inline void multitype_cmd(const RunConfig& c, std::ostream& out) {
  auto r = multitype::infer_multitype(poly::parse_defining_equation(read_input(c), c.n), infer_options(c));
  std::ostringstream t;
  t << "weight: " << to_string(r.weight) << "\nmultitype: " << multitype_text(r.m)
    << "\nscope: " << to_string(r.scope) << "\nweight one part: " << poly::to_string(r.distinguished.weight1_part)
    << '\n';
  emit(out, c, multitype::to_json(r), t.str());
}

// Leading polynomial for the Kohn-Nirenberg test: the weight-one part of the
// distinguished weight, which must be (1/m, ..., 1/m), with pure z and pure
// zbar terms dropped since a holomorphic change of w removes them.
inline std::pair<Polynomial, int> kn_leading(const Polynomial& psi, const RunConfig& c) {
  auto mt = multitype::infer_multitype(psi, infer_options(c));
  const auto& m0 = mt.m.front();
  for (const auto& m : mt.m) {
    if (!m || !m0 || *m != *m0 || !is_integer(*m))
      throw PreconditionError("the Kohn-Nirenberg test needs all multitype entries equal to one integer m; got " +
                              multitype_text(mt.m));
  }
  Polynomial p(psi.dimension());
  for (const auto& [mono, coeff] : mt.distinguished.weight1_part.terms())
    if (mono.is_mixed()) p.add_term(mono, coeff);
  return {p, static_cast<int>(numerator(*m0))};
}

inline void kn(const RunConfig& c, std::ostream& out) {
  auto [p, m] = kn_leading(poly::parse_defining_equation(read_input(c), c.n), c);
  convexity::KNOptions opts;
  opts.grid = c.grid;
  opts.refinements = c.refinements;
  opts.tol = c.tol;
  auto axes = convexity::axis_conditions(p, m);
  auto report = convexity::convexifiability_verdict(p, m, opts);

  std::ostringstream t;
  t << "m: " << m << "\nleading polynomial: " << poly::to_string(p) << '\n';
  for (const auto& e : report.per_l) {
    t << "l=" << e.kn.l << " kappa=" << format_double(e.kn.kappa) << " threshold=" << format_double(e.threshold)
      << " (" << (2 * e.kn.l > m ? "" : "2*") << "gamma=" << convexity::exact_text(e.gamma) << ")"
      << " margin=" << format_double(e.margin) << '\n';
  }
  for (const auto& ax : axes)
    for (const auto& e : ax.entries)
      if (e.violated) t << "axis " << ax.axis << " violates the l=" << e.l << " inequality\n";
  t << "verdict: " << to_string(report.verdict);
  if (report.obstruction) {
    const auto& e = report.per_l[*report.obstruction];
    t << " at l=" << e.kn.l << " witness " << format_vector(e.kn.witness);
  }
  t << '\n';

  auto j = convexity::to_json(report);
  j["leading_polynomial"] = poly::to_string(p);
  j["axes"] = convexity::to_json(axes);
  emit(out, c, j, t.str());
}

inline void model(const RunConfig& c, std::ostream& out) {
  convexity::KNModel mdl{c.k, c.l, parse_rational(c.a)};
  auto p = convexity::kn_model_polynomial(mdl);
  auto mc = convexity::model_convexity(mdl);
  auto j = convexity::to_json(mdl, mc);
  j["polynomial"] = poly::to_string(p);
  std::ostringstream t;
  t << "polynomial: " << poly::to_string(p) << "\ngamma: " << convexity::exact_text(mc.gamma) << " ("
    << format_double(mc.gamma.value) << ")\nconvex: " << (mc.convex ? "true" : "false") << "\nconvexifiable: "
    << (mc.convexifiable ? (*mc.convexifiable ? "true" : "false") : "undetermined (l divides k)") << '\n';
  emit(out, c, j, t.str());
}

inline void gamma_table(const RunConfig& c, std::ostream& out) {
  if (c.k_range.empty()) throw PreconditionError("gamma-table needs --k");
  auto [k_lo, k_hi] = parse_range(c.k_range);
  std::pair<int, int> l_bounds{2, k_hi};
  if (!c.l_range.empty()) l_bounds = parse_range(c.l_range);
  nlohmann::json rows = nlohmann::json::array();
  std::ostringstream t;
  t << "l,k,branch,gamma_exact,gamma_float\n";
  for (int k = std::max(k_lo, 2); k <= k_hi; ++k) {
    for (int l = std::max(2, l_bounds.first + (l_bounds.first % 2 != 0)); l <= std::min(k, l_bounds.second); l += 2) {
      auto g = convexity::gamma(l, k);
      rows.push_back({{"l", l},
                      {"k", k},
                      {"branch", to_string(g.branch)},
                      {"gamma_exact", convexity::exact_text(g)},
                      {"gamma_float", g.value}});
      t << l << ',' << k << ',' << to_string(g.branch) << ',' << convexity::exact_text(g) << ','
        << format_double(g.value) << '\n';
    }
  }
  emit(out, c, rows, t.str());
}

inline int report_error(const RunConfig& c, std::ostream& err, std::string_view code, const std::string& message) {
  if (c.json) err << nlohmann::json{{"error", {{"code", code}, {"message", message}}}}.dump() << '\n';
  else err << "error [" << code << "]: " << message << '\n';
  return code == "internal" ? 1 : 2;
}

}  // namespace detail

// Exit code 0 on success, 2 on input or precondition errors, 1 on internal ones.
inline int run(const RunConfig& c, std::ostream& out, std::ostream& err) {
  try {
    validate(c);
    switch (c.command) {
      case Command::Classify: detail::classify(c, out); break;
      case Command::NormalForm: detail::normal_form(c, out); break;
      case Command::Multitype: detail::multitype_cmd(c, out); break;
      case Command::KN: detail::kn(c, out); break;
      case Command::Model: detail::model(c, out); break;
      case Command::GammaTable: detail::gamma_table(c, out); break;
    }
    return 0;
  } catch (const Error& e) {
    return detail::report_error(c, err, to_string(e.code()), e.what());
  } catch (const std::exception& e) {
    return detail::report_error(c, err, "internal", e.what());
  }
}

// Parses argv with CLI11 and runs the selected subcommand.
inline int main_with_args(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Invariants of real hypersurfaces given by polynomial defining equations"};
  app.require_subcommand(1);
  RunConfig c;

  auto add_common = [&](CLI::App* sub) {
    sub->add_flag("--json", c.json, "Emit JSON instead of text");
  };
  auto add_input = [&](CLI::App* sub) {
    auto* e = sub->add_option("--expr", c.expr, "Defining equation v = ... as an inline expression");
    auto* f = sub->add_option("--file", c.file, "File holding the defining equation");
    e->excludes(f);
    sub->add_option("--n", c.n, "Number of complex variables z1..zn")->capture_default_str();
    add_common(sub);
  };

  struct Entry {
    const char* name;
    const char* help;
    Command command;
  };
  const std::vector<Entry> entries = {
      {"classify", "Planar invariants, model, normal form and automorphism class (n = 1)", Command::Classify},
      {"normal-form", "Check the normal form conditions only (n = 1)", Command::NormalForm},
      {"multitype", "Catlin multitype with a certificate", Command::Multitype},
      {"kn", "Kohn-Nirenberg numbers and the convexifiability obstruction", Command::KN},
      {"model", "Convexity of |z|^k + a|z|^(k-l) Re z^l", Command::Model},
      {"gamma-table", "CSV table of convexity thresholds", Command::GammaTable},
  };
  std::vector<std::pair<CLI::App*, Command>> subs;
  for (const auto& e : entries) subs.emplace_back(app.add_subcommand(e.name, e.help), e.command);

  for (auto& [sub, cmd] : subs) {
    switch (cmd) {
      case Command::Classify:
      case Command::NormalForm: add_input(sub); break;
      case Command::Multitype:
        add_input(sub);
        sub->add_flag("--permute", c.permute, "Search over coordinate permutations");
        sub->add_option("--max-denominator", c.max_denominator, "Largest weight denominator")->capture_default_str();
        break;
      case Command::KN:
        add_input(sub);
        sub->add_option("--grid", c.grid, "Grid points per reduced dimension (>= 8; default depends on n)");
        sub->add_option("--refine", c.refinements, "Simplex refinements from the best cells")->capture_default_str();
        sub->add_option("--tol", c.tol, "Margin tolerance for an obstruction")->capture_default_str();
        sub->add_flag("--permute", c.permute, "Search over coordinate permutations for the multitype");
        sub->add_option("--max-denominator", c.max_denominator, "Largest weight denominator")->capture_default_str();
        break;
      case Command::Model:
        sub->add_option("--k", c.k, "Degree k")->required();
        sub->add_option("--l", c.l, "Even index l")->required();
        sub->add_option("--a", c.a, "Nonnegative rational coefficient a, e.g. 15/7")->required();
        add_common(sub);
        break;
      case Command::GammaTable:
        sub->add_option("--k", c.k_range, "k or a range lo..hi")->required();
        sub->add_option("--l", c.l_range, "l or a range lo..hi (default: every even l <= k)");
        add_common(sub);
        break;
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }
  for (const auto& [sub, cmd] : subs)
    if (sub->parsed()) c.command = cmd;
  return run(c, out, err);
}

}  // namespace crinv::cli
