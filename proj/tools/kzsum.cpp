// kzsum: coefficients, Borel evaluation, resummation, radial limits and the
// acceptance checks from the command line.
//
// Exit codes: 0 success, 2 usage, 3 domain, 4 numerical tolerance failure.

#include "kz/format.hpp"
#include "kz/kz_invariants.hpp"
#include "kz/modular_forms.hpp"
#include "kz/resurgent_borel.hpp"
#include "kz/summation.hpp"
#include "kz/verify.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>

using namespace kz;

namespace {

enum Exit { ok = 0, usage = 2, domain = 3, tolerance = 4 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  int precision = 25;
  std::string tol = "1e-10";  // parsed at the working precision
  double eps_ray = M_PI / 16;
  std::string object = "trefoil";
  std::string output = "json";
  unsigned jobs = 1;
  std::string out;
};

// What a command produced, in all three renderings.
struct Output {
  Json json;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> plain;
  int status = ok;
};

std::string render(const Output& o, const std::string& format) {
  if (format == "json") return o.json.dump(2) + "\n";
  std::string s;
  if (format == "csv") {
    s += csv_row(o.header) + "\n";
    for (auto& r : o.rows) s += csv_row(r) + "\n";
  } else {
    for (auto& l : o.plain) s += l + "\n";
  }
  return s;
}

KnotObject object_of(const RunConfig& c) {
  if (c.object == "trefoil") return KnotObject::trefoil;
  if (c.object == "poincare") return KnotObject::poincare;
  throw UsageError("unknown object '" + c.object + "' (expected trefoil or poincare)");
}

template <class R>
SqrtBranched<R> borel_of(const RunConfig& c) {
  return object_of(c) == KnotObject::trefoil ? trefoil_borel<R>() : poincare_borel<R>();
}

template <class R>
std::string complex_plain(const Complex<R>& z) {
  std::string im = format_real(z.imag());
  return format_real(z.real()) + (im[0] == '-' ? " - " + im.substr(1) : " + " + im) + "i";
}

// coeffs ------------------------------------------------------------------

Output cmd_coeffs(const RunConfig& c, int n, const std::string& route) {
  if (n < 0) throw UsageError("--n must be >= 0");
  auto obj = object_of(c);
  CoefficientRoute r;
  if (route == "generating-function") r = CoefficientRoute::generating_function;
  else if (route == "bernoulli") r = CoefficientRoute::bernoulli_closed_form;
  else throw UsageError("unknown route '" + route + "' (expected generating-function or bernoulli)");
  if (obj == KnotObject::poincare && r != CoefficientRoute::generating_function)
    throw UsageError("the Poincare sphere coefficients have only the generating-function route");
  auto t = obj == KnotObject::trefoil ? trefoil_coeffs(n + 1, r) : poincare_coeffs(n + 1);
  Output o;
  o.json["object"] = c.object;
  o.json["route"] = to_string(t.route);
  o.json["scaled_as"] = obj == KnotObject::trefoil ? "a_n/24^n" : "a_n/(n! 120^n)";
  o.json["rows"] = Json::array();
  o.header = {"n", "a_n", "scaled"};
  for (int k = 0; k <= n; ++k) {
    std::string a = format_rational(t.a[k]), s = format_rational(t.scaled(k));
    o.json["rows"].push_back({{"n", k}, {"a_n", a}, {"scaled", s}});
    o.rows.push_back({std::to_string(k), a, s});
    o.plain.push_back(std::to_string(k) + "  " + a + "  " + s);
  }
  return o;
}

// borel -------------------------------------------------------------------

template <class R>
Output cmd_borel(const RunConfig& c, const std::string& p_text, const std::string& sheet,
                 int taylor) {
  auto g = borel_of<R>(c);
  Output o;
  o.json["object"] = c.object;
  o.json["precision"] = c.precision;
  o.json["tol"] = format_real(parse_real<R>(c.tol));
  if (taylor >= 0) {
    auto tc = taylor_coeffs(g, unsigned(taylor) + 1, parse_real<R>(c.tol));
    o.json["taylor"] = Json::array();
    o.header = {"j", "b_j", "error", "exact"};
    for (int j = 0; j <= taylor; ++j) {
      std::string v = format_real(tc.numeric[j].value.real()), e = format_real(tc.numeric[j].error);
      std::string x = tc.exact ? format_rational((*tc.exact)[j]) : "";
      Json row{{"j", j}, {"b_j", v}, {"error", e}};
      if (tc.exact) row["exact"] = x;
      o.json["taylor"].push_back(row);
      o.rows.push_back({std::to_string(j), v, e, x});
      o.plain.push_back("b_" + std::to_string(j) + " = " + v + "  (+- " + e + ")" +
                        (x.empty() ? "" : "  exact " + x));
    }
    return o;
  }
  SheetedPoint<R> pt{parse_complex<R>(p_text), Sheet::principal};
  if (sheet == "second") pt.sheet = Sheet::second;
  else if (sheet != "principal") throw UsageError("--sheet must be principal or second");
  auto e = eval(g, pt, parse_real<R>(c.tol));
  o.json["p"] = complex_json(pt.p);
  o.json["sheet"] = sheet;
  o.json["value"] = complex_json(e.value);
  o.json["error"] = format_real(e.error);
  o.header = {"p_re", "p_im", "sheet", "re", "im", "error"};
  o.rows.push_back({format_real(pt.p.real()), format_real(pt.p.imag()), sheet,
                    format_real(e.value.real()), format_real(e.value.imag()), format_real(e.error)});
  o.plain = {"G(" + complex_plain(pt.p) + ") = " + complex_plain(e.value),
             "error <= " + format_real(e.error)};
  if (e.error > parse_real<R>(c.tol)) o.status = tolerance;
  return o;
}

// sum ---------------------------------------------------------------------

template <class R>
Output cmd_sum(const RunConfig& c, const std::string& x_text, const std::string& method,
               const std::string& route, bool cross) {
  auto g = borel_of<R>(c);
  Complex<R> x = parse_complex<R>(x_text);
  R tol = parse_real<R>(c.tol);
  Output o;
  o.json["object"] = c.object;
  o.json["method"] = method;
  o.json["x"] = complex_json(x);
  o.json["precision"] = c.precision;
  o.json["tol"] = format_real(tol);
  if (cross && method != "med") throw UsageError("--cross-check applies to --method med");
  SummationResult<R> s;
  std::string route_name;
  if (method == "delta") {
    if (route != "auto") throw UsageError("--route does not apply to delta");
    auto d = dirichlet_delta(g, x, tol);
    s.value = d.value;
    s.err_estimate = d.error;
    route_name = "dirichlet-series";
  } else if (method == "med") {
    if (route == "auto") s = sum_median(g, x, tol, cross);
    else if (route == "closed-form") s = sum_closed_form(g, x, tol);
    else if (route == "erfi") s = sum_erfi(g, x, tol);
    else throw UsageError("median routes: auto, closed-form, erfi");
    route_name = to_string(s.route);
  } else {
    AverageKind k;
    try {
      k = parse_average(method);
    } catch (const std::invalid_argument& e) {
      throw UsageError(std::string(e.what()) + " or delta");
    }
    if (route == "auto" || route == "lateral") s = sum_lateral(g, k, x, tol);
    else if (route == "eta-integral") {
      if (object_of(c) != KnotObject::trefoil) throw UsageError("eta-integral is trefoil only");
      s = sum_eta_integral<R>(k, x, R(c.eps_ray), tol);
    } else if (route == "borel-ray") s = sum_lateral_ray(g, k, x, tol);
    else throw UsageError("lateral routes: auto, lateral, eta-integral, borel-ray");
    route_name = to_string(s.route);
  }
  o.json["value"] = complex_json(s.value);
  o.json["err_estimate"] = format_real(s.err_estimate);
  o.json["route"] = route_name;
  o.header = {"route", "re", "im", "err_estimate"};
  o.rows.push_back({route_name, format_real(s.value.real()), format_real(s.value.imag()),
                    format_real(s.err_estimate)});
  o.plain = {"S^" + method + "(" + complex_plain(x) + ") = " + complex_plain(s.value),
             "err_estimate " + format_real(s.err_estimate), "route " + route_name};
  if (cross) {
    o.json["cross"] = Json::array();
    for (auto& r : s.cross) {
      o.json["cross"].push_back({{"route", to_string(r.route)},
                                 {"value", complex_json(r.value)},
                                 {"err_estimate", format_real(r.err_estimate)}});
      o.rows.push_back({to_string(r.route), format_real(r.value.real()),
                        format_real(r.value.imag()), format_real(r.err_estimate)});
      o.plain.push_back("  " + to_string(r.route) + ": " + complex_plain(r.value));
    }
    o.json["discrepancy"] = format_real(s.discrepancy);
    o.plain.push_back("max discrepancy " + format_real(s.discrepancy));
  }
  if (!(s.err_estimate <= tol)) o.status = tolerance;
  return o;
}

// radial ------------------------------------------------------------------

struct LadderFlags {
  std::optional<double> eps0, ratio;
  std::optional<unsigned> rungs;
};

template <class R>
Output cmd_radial(const RunConfig& c, const std::string& alpha_text, const LadderFlags& lf) {
  Rational a;
  try {
    a = parse_rational(alpha_text);
  } catch (const std::exception&) {
    throw UsageError("--alpha must be a rational p/q");
  }
  if (a == 0) throw UsageError("--alpha must be nonzero");
  RationalAngle alpha{a};
  auto g = borel_of<R>(c);
  auto spec = default_radial_ladder<R>(alpha);
  if (lf.eps0) {
    if (!(*lf.eps0 > 0)) throw UsageError("--eps0 must be positive");
    spec.eps0 = R(*lf.eps0);
  }
  if (lf.ratio) {
    if (!(*lf.ratio > 1)) throw UsageError("--ratio must exceed 1");
    spec.ratio = R(*lf.ratio);
  }
  if (lf.rungs) {
    if (*lf.rungs < 2) throw UsageError("--rungs must be at least 2");
    spec.rungs = *lf.rungs;
  }
  auto r = radial_limit(g, alpha, spec, parse_real<R>(c.tol));
  Output o;
  o.json["object"] = c.object;
  o.json["alpha"] = format_rational(a);
  o.json["precision"] = c.precision;
  o.json["ladder"] = {{"eps0", format_real(spec.eps0)},
                      {"ratio", format_real(spec.ratio)},
                      {"rungs", spec.rungs}};
  o.json["limit"] = complex_json(r.value);
  o.json["error"] = format_real(r.error);
  o.json["converged"] = r.converged;
  o.header = {"quantity", "re", "im"};
  o.rows.push_back({"limit", format_real(r.value.real()), format_real(r.value.imag())});
  o.plain = {"radial limit at alpha = " + format_rational(a) + ": " + complex_plain(r.value),
             "extrapolation error " + format_real(r.error)};
  if (object_of(c) == KnotObject::trefoil) {
    auto t = phi<R>(alpha);
    R diff = abs(r.value - t);
    o.json["target_phi"] = complex_json(t);
    o.json["difference"] = format_real(diff);
    o.rows.push_back({"phi", format_real(t.real()), format_real(t.imag())});
    o.plain.push_back("phi(alpha) = " + complex_plain(t));
    o.plain.push_back("|difference| " + format_real(diff));
  }
  o.json["samples"] = Json::array();
  for (std::size_t i = 0; i < r.samples.size(); ++i) {
    o.json["samples"].push_back({{"eps", format_real(r.eps[i])}, {"value", complex_json(r.samples[i])}});
    o.rows.push_back({"eps=" + format_real(r.eps[i]), format_real(r.samples[i].real()),
                      format_real(r.samples[i].imag())});
  }
  if (!r.converged) {
    o.status = tolerance;
    o.plain.push_back("ladder did not converge");
  }
  return o;
}

// verify ------------------------------------------------------------------

Output cmd_verify(const RunConfig& c, const std::string& suite_text) {
  VerifySuite suite;
  try {
    suite = parse_suite(suite_text);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  auto reports = run_suite(suite, c.jobs);
  Output o;
  bool all = true;
  o.json["suite"] = to_string(suite);
  o.json["criteria"] = Json::array();
  o.header = {"criterion", "check", "residual", "tolerance", "pass"};
  for (auto& r : reports) {
    all = all && r.pass;
    Json cj{{"id", r.id}, {"title", r.title}, {"pass", r.pass}, {"checks", Json::array()}};
    if (!r.error.empty()) cj["error"] = r.error;
    char line[160];
    std::snprintf(line, sizeof line, "%s  criterion %2d  %s  (%.2f s)", r.pass ? "PASS" : "FAIL",
                  r.id, r.title.c_str(), r.seconds);
    o.plain.push_back(line);
    for (auto& k : r.checks) {
      cj["checks"].push_back({{"name", k.name},
                              {"residual", format_real(k.residual)},
                              {"tolerance", format_real(k.tolerance)},
                              {"pass", k.pass}});
      o.rows.push_back({std::to_string(r.id), k.name, format_real(k.residual),
                        format_real(k.tolerance), k.pass ? "true" : "false"});
      std::snprintf(line, sizeof line, "      %-4s %s: %.3e (tol %.1e)", k.pass ? "ok" : "BAD",
                    k.name.c_str(), k.residual, k.tolerance);
      o.plain.push_back(line);
    }
    if (!r.error.empty()) o.plain.push_back("      error: " + r.error);
    o.json["criteria"].push_back(cj);
  }
  o.json["pass"] = all;
  if (!all) o.status = tolerance;
  return o;
}

// Instantiates a command for the working precision.
template <class F>
Output at_precision(const RunConfig& c, F&& f) {
  if (c.precision <= std::numeric_limits<double>::digits10) return f(double{});
  return f(Quad{});
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Kontsevich-Zagier series: coefficients, Borel sums, radial limits"};
  app.require_subcommand(1);
  app.fallthrough();
  RunConfig cfg;
  app.set_config("--config", "", "key=value file; flags override it");
  app.add_option("--precision", cfg.precision, "working precision in digits (15 = double, <= 33 = quad)")
      ->capture_default_str();
  app.add_option("--tol", cfg.tol, "absolute tolerance")->capture_default_str();
  app.add_option("--eps-ray", cfg.eps_ray, "ray rotation for the eta-integral route")
      ->capture_default_str();
  app.add_option("--object", cfg.object, "trefoil or poincare")->capture_default_str();
  app.add_option("--output", cfg.output, "json, csv or plain")->capture_default_str();
  app.add_option("--jobs", cfg.jobs, "threads for independent grid and ladder points")
      ->capture_default_str();
  app.add_option("--out", cfg.out, "write to this file instead of stdout");

  auto* coeffs = app.add_subcommand("coeffs", "series coefficients a_0..a_n as exact rationals");
  int n = 10;
  std::string coeff_route = "generating-function";
  coeffs->add_option("--n", n, "largest index")->capture_default_str();
  coeffs->add_option("--route", coeff_route, "generating-function or bernoulli")->capture_default_str();

  auto* borel = app.add_subcommand("borel", "evaluate the Borel transform G(p)");
  std::string p_text = "0", sheet = "principal";
  int taylor = -1;
  borel->add_option("--p", p_text, "point a+bi")->capture_default_str();
  borel->add_option("--sheet", sheet, "principal or second")->capture_default_str();
  borel->add_option("--taylor", taylor, "print Taylor coefficients b_0..b_N instead");

  auto* sum = app.add_subcommand("sum", "median or lateral resummation at x");
  std::string x_text, method = "med", sum_route = "auto";
  bool cross = false;
  sum->add_option("--x", x_text, "point a+bi")->required();
  sum->add_option("--method", method, "med, mul, mur or delta")->capture_default_str();
  sum->add_option("--route", sum_route,
                  "auto; med: closed-form, erfi; mul/mur: lateral, eta-integral, borel-ray")
      ->capture_default_str();
  sum->add_flag("--cross-check", cross, "run every median route and report the discrepancy");

  auto* radial = app.add_subcommand("radial", "radial limit of S^med at -1/(2 pi i alpha)");
  std::string alpha_text;
  LadderFlags lf;
  radial->add_option("--alpha", alpha_text, "rational p/q, nonzero")->required();
  radial->add_option("--eps0", lf.eps0, "first ladder step");
  radial->add_option("--ratio", lf.ratio, "ladder ratio");
  radial->add_option("--rungs", lf.rungs, "number of rungs");

  auto* verify = app.add_subcommand("verify", "run acceptance checks");
  std::string suite = "all";
  verify->add_option("--suite", suite, "exact, identities or all")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return usage;
  }

  try {
    if (cfg.precision < 15 || cfg.precision > 33)
      throw UsageError("--precision must lie in [15, 33]");
    double tol_value;
    try {
      tol_value = parse_real<double>(cfg.tol);
    } catch (const std::invalid_argument&) {
      throw UsageError("--tol must be a number");
    }
    if (!(tol_value > 0)) throw UsageError("--tol must be positive");
    if (!(cfg.eps_ray > 0 && cfg.eps_ray < M_PI / 2)) throw UsageError("--eps-ray must lie in (0, pi/2)");
    if (cfg.output != "json" && cfg.output != "csv" && cfg.output != "plain")
      throw UsageError("--output must be json, csv or plain");
    if (cfg.jobs < 1) throw UsageError("--jobs must be at least 1");
    object_of(cfg);

    Output o;
    if (coeffs->parsed()) o = cmd_coeffs(cfg, n, coeff_route);
    if (borel->parsed())
      o = at_precision(cfg, [&](auto r) { return cmd_borel<decltype(r)>(cfg, p_text, sheet, taylor); });
    if (sum->parsed())
      o = at_precision(cfg, [&](auto r) {
        return cmd_sum<decltype(r)>(cfg, x_text, method, sum_route, cross);
      });
    if (radial->parsed())
      o = at_precision(cfg, [&](auto r) { return cmd_radial<decltype(r)>(cfg, alpha_text, lf); });
    if (verify->parsed()) o = cmd_verify(cfg, suite);

    std::string text = render(o, cfg.output);
    if (cfg.out.empty()) {
      std::cout << text;
    } else {
      std::ofstream f(cfg.out, std::ios::binary);
      if (!f) throw UsageError("cannot write '" + cfg.out + "'");
      f << text;
    }
    return o.status;
  } catch (const UsageError& e) {
    std::cerr << "kzsum: " << e.what() << "\n";
    return usage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "kzsum: " << e.what() << "\n";
    return usage;
  } catch (const std::domain_error& e) {
    std::cerr << "kzsum: domain error: " << e.what() << "\n";
    return domain;
  } catch (const NonConvergence& e) {
    std::cerr << "kzsum: did not converge: " << e.what() << "\n";
    return tolerance;
  } catch (const std::exception& e) {
    std::cerr << "kzsum: " << e.what() << "\n";
    return tolerance;
  }
}
