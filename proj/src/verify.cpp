#include "kz/verify.hpp"

#include "kz/characters.hpp"
#include "kz/kz_invariants.hpp"
#include "kz/modular_forms.hpp"
#include "kz/summation.hpp"
#include "kz/transseries.hpp"

#include <array>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <functional>
#include <limits>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace kz {

namespace {

using C = Complex<double>;
using CQ = Complex<Quad>;

RationalAngle ang(long n, long d) { return RationalAngle{Rational(n, d)}; }

double d(Quad q) { return static_cast<double>(q); }

void parallel_for(std::size_t n, unsigned jobs, const std::function<void(std::size_t)>& f) {
  if (jobs <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) f(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr err;
  std::mutex m;
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < std::min<std::size_t>(jobs, n); ++t)
    pool.emplace_back([&] {
      for (std::size_t i; (i = next++) < n;) {
        try {
          f(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(m);
          if (!err) err = std::current_exception();
        }
      }
    });
  for (auto& th : pool) th.join();
  if (err) std::rethrow_exception(err);
}

struct Builder {
  std::vector<Check> checks;
  void add(std::string name, double residual, double tol) {
    bool ok = std::isfinite(residual) && residual <= tol;
    checks.push_back({std::move(name), residual, tol, ok});
  }
  void exact(std::string name, int mismatches) { add(std::move(name), mismatches, 0); }
};

// running maximum; NaN counts as infinitely bad
void max_into(double& acc, double v) {
  if (std::isnan(v)) v = std::numeric_limits<double>::infinity();
  if (v > acc) acc = v;
}

// 1: a_n / 24^n and the first Borel coefficients, exactly
void exact_coefficients(Builder& b, unsigned) {
  const std::array<Rational, 5> fseries{Rational(1), Rational(23, 24), Rational(1681, 1152),
                                        Rational(257543, 82944), Rational(67637281, 7962624)};
  const std::array<Rational, 4> borel{Rational(23, 24), Rational(1681, 1152),
                                      Rational(257543, 165888), Rational(67637281, 47775744)};
  auto t = trefoil_coeffs(5);
  int bad = 0;
  for (unsigned n = 0; n < fseries.size(); ++n) bad += t.scaled(n) != fseries[n];
  b.exact("a_n/24^n, n <= 4", bad);
  auto G = borel_transform(t.f_series());
  bad = 0;
  for (unsigned n = 0; n < borel.size(); ++n)
    bad += (G[n] != borel[n]) + (trefoil_borel_taylor(n) != borel[n]);
  b.exact("b_0..b_3 (Borel operator and L-values)", bad);
}

// 2: both coefficient routes and both Borel routes, exactly
void cross_route_coefficients(Builder& b, unsigned) {
  auto gf = trefoil_coeffs(41, CoefficientRoute::generating_function);
  auto bc = trefoil_coeffs(41, CoefficientRoute::bernoulli_closed_form);
  int bad = 0;
  for (std::size_t n = 0; n <= 40; ++n) bad += gf.a[n] != bc.a[n];
  b.exact("a_n generating function = Bernoulli form, n <= 40", bad);
  auto G = borel_transform(trefoil_coeffs(32).f_series());
  bad = 0;
  for (unsigned n = 0; n <= 30; ++n) bad += G[n] != exact_bn(n).value;
  b.exact("b_n Borel operator = Bernoulli difference, n <= 30", bad);
}

// 3: exact L-values against certified partial sums
void l_values(Builder& b, unsigned) {
  double worst = 0;
  for (unsigned n = 0; n <= 25; ++n) {
    Quad s = 2 * n + 2;
    auto p = l_series_partial<Quad>(PeriodicCharacter::chi12(), s, n == 0 ? 200000 : 2000);
    Quad exact = l_value_exact(n).value<Quad>();
    Quad value_err = 16 * unit_roundoff<Quad>() * (2 * n + 4) * abs(exact);
    // ratio of the discrepancy to its certified bound
    max_into(worst, d(abs(p.value - exact) / (p.total_bound() + value_err)));
  }
  b.add("|partial - exact| / certified bound, n <= 25", worst, 1);
  Quad target = pi<Quad>() * pi<Quad>() / (6 * sqrt(Quad(3)));
  b.add("L(2) exact = pi^2/(6 sqrt 3)", d(abs(l_value_exact(0).value<Quad>() - target)), 1e-12);
  auto full = l_series_partial<Quad>(PeriodicCharacter::chi12(), Quad(2), 1200000);
  b.add("L(2) partial sum, 1.2e6 terms", d(abs(full.value - target)), 1e-12);
}

std::vector<CQ> criterion4_grid() {
  std::vector<CQ> xs;
  for (double r : {1.0, 2.5, 7.0, 20.0})
    for (double a : {-5 * M_PI / 16, -M_PI / 6, 0.0, M_PI / 6, 5 * M_PI / 16})
      xs.push_back(std::polar(Quad(r), Quad(a)));
  return xs;
}

// 4: erfi route, (mul + mur)/2 and mul + delta on 20 points, at quad precision
void summation_cross_route(Builder& b, unsigned jobs) {
  auto g = trefoil_borel<Quad>();
  auto xs = criterion4_grid();
  std::vector<double> mean(xs.size()), plus(xs.size());
  parallel_for(xs.size(), jobs, [&](std::size_t i) {
    const Quad tol = Quad(1e-20);
    auto e = sum_erfi(g, xs[i], tol);
    auto l = sum_eta_integral<Quad>(AverageKind::mul, xs[i], pi<Quad>() / 16, tol);
    auto u = sum_eta_integral<Quad>(AverageKind::mur, xs[i], pi<Quad>() / 16, tol);
    auto dl = dirichlet_delta(g, xs[i], tol);
    mean[i] = d(abs((l.value + u.value) / Quad(2) - e.value));
    plus[i] = d(abs(l.value + dl.value - e.value));
  });
  double m = 0, p = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) max_into(m, mean[i]), max_into(p, plus[i]);
  b.add("(mul + mur)/2 vs erfi, 20 points", m, 1e-8);
  b.add("mul + delta vs erfi, 20 points", p, 1e-8);
}

// 5: real on the real axis, conjugation symmetry of the laterals
void reality(Builder& b, unsigned jobs) {
  auto g = trefoil_borel<double>();
  std::vector<double> xs;
  for (int i = 0; i < 10; ++i) xs.push_back(0.5 * std::pow(100.0, i / 9.0));
  std::vector<double> im_med(xs.size()), im_mean(xs.size());
  parallel_for(xs.size(), jobs, [&](std::size_t i) {
    im_med[i] = std::abs(sum_median(g, C(xs[i]), 1e-12).value.imag());
    auto l = sum_eta_integral<double>(AverageKind::mul, C(xs[i]), M_PI / 16, 1e-12);
    auto u = sum_eta_integral<double>(AverageKind::mur, C(xs[i]), M_PI / 16, 1e-12);
    im_mean[i] = std::abs(((l.value + u.value) / 2.0).imag());
  });
  double a = 0, m = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) max_into(a, im_med[i]), max_into(m, im_mean[i]);
  b.add("|Im S^med(x)|, 10 real x in [0.5, 50]", a, 1e-10);
  b.add("|Im (S^mul + S^mur)/2|, same points", m, 1e-10);
  const std::array<C, 5> zs{C(1, 1), C(2, -0.5), C(0.7, 0.3), C(5, 3), C(10, -4)};
  std::vector<double> conj(zs.size());
  parallel_for(zs.size(), jobs, [&](std::size_t i) {
    auto l = sum_eta_integral<double>(AverageKind::mul, zs[i], M_PI / 16, 1e-12);
    // mur from the median closed form plus delta, so the two sides share no code
    auto u = sum_lateral(g, AverageKind::mur, std::conj(zs[i]), 1e-12);
    conj[i] = std::abs(std::conj(l.value) - u.value);
  });
  double c = 0;
  for (double v : conj) max_into(c, v);
  b.add("|conj S^mul(x) - S^mur(conj x)|, 5 points", c, 1e-8);
}

// 6: |S^med - partial sum| against twice the first omitted term
void asymptoticity(Builder& b, unsigned) {
  auto g = trefoil_borel<double>();
  auto t = trefoil_coeffs(7);
  double worst = 0;
  for (double x : {10.0, 20.0, 40.0}) {
    C s = sum_median(g, C(x), 1e-14).value;
    C partial = 0;
    for (unsigned N = 0; N <= 5; ++N) {
      if (N > 0) {
        double next = std::abs(t.scaled(N).convert_to<double>() * std::pow(x, -double(N)));
        max_into(worst, std::abs(s - partial) / next);
      }
      partial += t.scaled(N).convert_to<double>() * std::pow(x, -double(N));
    }
  }
  b.add("max |remainder| / first omitted, x in {10,20,40}, N <= 5", worst, 2);
}

// 7: radial limits against phi
void radial_limits(Builder& b, unsigned jobs) {
  auto g = trefoil_borel<double>();
  const std::array<RationalAngle, 4> as{ang(1, 1), ang(1, 2), ang(1, 3), ang(2, 1)};
  const std::array<const char*, 4> names{"1", "1/2", "1/3", "2"};
  std::vector<double> res(as.size());
  parallel_for(as.size(), jobs, [&](std::size_t i) {
    auto r = radial_limit(g, as[i], default_radial_ladder<double>(as[i]), 1e-12);
    res[i] = r.converged ? std::abs(r.value - phi<double>(as[i]))
                         : std::numeric_limits<double>::infinity();
  });
  for (std::size_t i = 0; i < as.size(); ++i)
    b.add(std::string("radial limit vs phi(") + names[i] + ")", res[i], 1e-4);
}

// g^{(n)}(0)/n! against (-pi i/12)^n a_n by Richardson-corrected central differences
double g_derivative_error() {
  const Quad tol = Quad(1e-27);
  auto g = [&](Quad x) { return zagier_g<Quad>(x, tol, GMode::direct).value; };
  auto derivs = [&](Quad h) {
    auto p1 = g(h), m1 = g(-h), p2 = g(2 * h), m2 = g(-2 * h);
    return std::array<CQ, 3>{(p1 - m1) / (2 * h), (p2 - p1 - m1 + m2) / (3 * h * h),
                             (p2 - Quad(2) * p1 + Quad(2) * m1 - m2) / (2 * h * h * h)};
  };
  Quad h = Quad(1e-3);
  auto d1 = derivs(h), d2 = derivs(h / 2);
  auto a = trefoil_coeffs(4).a;
  CQ w(0, -pi<Quad>() / 12), wn(1);
  Quad fact = 1;
  double worst = 0;
  for (unsigned n = 1; n <= 3; ++n) {
    wn *= w;
    fact *= Quad(n);
    CQ est = (Quad(4) * d2[n - 1] - d1[n - 1]) / Quad(3) / fact;
    CQ expect = wn * a[n].convert_to<Quad>();
    max_into(worst, d(abs(est - expect) / abs(expect)));
  }
  return worst;
}

// 8: delta / eta-tilde, strange identity, g modularity, g derivatives
void modular_identities(Builder& b, unsigned jobs) {
  auto g = trefoil_borel<double>();
  double dd = 0;
  for (double x : {1.0, 0.5, 2.0}) {
    C lhs = dirichlet_delta(g, C(x), 1e-15).value;
    C rhs = C(0, std::sqrt(2.0)) * std::pow(M_PI * x, 1.5) *
            eta_tilde<double>(C(0, 2 * M_PI * x), 1e-16).value;
    max_into(dd, std::abs(lhs - rhs));
  }
  b.add("delta vs i sqrt2 (pi x)^{3/2} eta~(2 pi i x), x in {1, 1/2, 2}", dd, 1e-12);

  const std::array<RationalAngle, 2> as{ang(1, 1), ang(1, 2)};
  std::vector<double> st(as.size());
  parallel_for(as.size(), jobs, [&](std::size_t i) {
    auto r = eta_tilde_radial<double>(as[i], default_eta_tilde_ladder<double>(as[i]), 1e-14);
    st[i] = r.converged ? std::abs(r.value + 2.0 * phi<double>(as[i]))
                        : std::numeric_limits<double>::infinity();
  });
  b.add("strange identity at 1", st[0], 1e-4);
  b.add("strange identity at 1/2", st[1], 1e-4);

  double mod = 0;
  for (double a : {1.0, 2.0, 0.5}) {
    C lhs = zagier_g<double>(a, 1e-11).value;
    C rhs = std::pow(C(0, a), -1.5) * zagier_g<double>(-1 / a, 1e-11).value;
    max_into(mod, std::abs(lhs - rhs));
  }
  b.add("g(a) = (i a)^{-3/2} g(-1/a), a in {1, 2, 1/2}", mod, 1e-6);
  b.add("g^{(n)}(0)/n! vs (-pi i/12)^n a_n, n <= 3 (relative)", g_derivative_error(), 1e-3);
}

// a_n from (cos 4p + cos 14p) / (2 cos 15p), by long division in p
std::vector<Rational> poincare_oracle(int count) {
  const int N = 2 * count;
  std::vector<Rational> num(N), den(N), q(N);
  Rational f = 1;
  for (int k = 0; k < N; ++k) {
    if (k > 0) f *= k;
    if (k % 2) continue;
    Rational sign = (k / 2) % 2 ? -1 : 1;
    num[k] = sign * (pow_rational(Rational(4), k) + pow_rational(Rational(14), k)) / (2 * f);
    den[k] = sign * pow_rational(Rational(15), k) / f;
  }
  for (int m = 0; m < N; ++m) {
    Rational s = num[m];
    for (int j = 1; j <= m; ++j) s -= den[j] * q[m - j];
    q[m] = s / den[0];
  }
  std::vector<Rational> a;
  for (int n = 0; n < count; ++n) a.push_back(q[2 * n] * Rational(factorial(2 * n)));
  return a;
}

// 9: Poincare sphere
void poincare(Builder& b, unsigned jobs) {
  auto t = poincare_coeffs(2);
  auto oracle = poincare_oracle(2);
  int bad = (t.a[0] != 1) + (t.a[1] != 119) + (t.a[0] != oracle[0]) + (t.a[1] != oracle[1]);
  b.exact("a_0 = 1, a_1 = 119, both routes", bad);

  auto g = poincare_borel<double>();
  auto tc = taylor_coeffs(g, 7, 1e-12);
  double tay = tc.exact ? 0 : std::numeric_limits<double>::infinity();
  if (tc.exact)
    for (unsigned j = 0; j <= 6; ++j) {
      double e = (*tc.exact)[j].convert_to<double>();
      max_into(tay, std::abs(tc.numeric[j].value.real() - e));
    }
  b.add("numeric vs exact Borel Taylor coefficients, order <= 6", tay, 1e-8);

  const std::array<C, 5> xs{C(3), C(2, 1), C(5), C(1.5, -0.5), C(8, 2)};
  std::vector<double> disc(xs.size());
  parallel_for(xs.size(), jobs,
               [&](std::size_t i) { disc[i] = sum_median(g, xs[i], 1e-11, true).discrepancy; });
  double w = 0;
  for (double v : disc) max_into(w, v);
  b.add("closed form / lateral routes, 5 points", w, 1e-8);
}

// 10: transseries reconstruction and next-singularity suppression
void transseries(Builder& b, unsigned) {
  auto t = extract_ckl(7, 6);
  auto r = verify_transseries(t, 30, 50);
  b.add("relative reconstruction error at n = 50, k in {1,5,7}, l <= 6",
        d(r.window_relative_error), 1e-6);
  double worst = r.k_block_ratios.empty() ? std::numeric_limits<double>::infinity() : 0;
  for (Quad q : r.k_block_ratios) max_into(worst, std::abs(d(q) * 25 - 1));
  b.add("|25 * (k=1 residual ratio) - 1|", worst, 0.2);
}

using Runner = void (*)(Builder&, unsigned);

struct Entry {
  const char* title;
  Runner run;
};

const std::array<Entry, kCriterionCount> kCriteria{{
    {"exact coefficient suite", exact_coefficients},
    {"cross-route coefficient equality", cross_route_coefficients},
    {"L-value suite", l_values},
    {"summation cross-route", summation_cross_route},
    {"reality and conjugation", reality},
    {"asymptoticity", asymptoticity},
    {"radial limits", radial_limits},
    {"Dirichlet and modular identities", modular_identities},
    {"Poincare sphere suite", poincare},
    {"transseries reconstruction", transseries},
}};

}  // namespace

VerifySuite parse_suite(const std::string& s) {
  if (s == "exact") return VerifySuite::exact;
  if (s == "identities") return VerifySuite::identities;
  if (s == "all") return VerifySuite::all;
  throw std::invalid_argument("unknown suite '" + s + "' (expected exact, identities or all)");
}

std::string to_string(VerifySuite s) {
  switch (s) {
    case VerifySuite::exact: return "exact";
    case VerifySuite::identities: return "identities";
    case VerifySuite::all: return "all";
  }
  return "?";
}

std::vector<int> suite_criteria(VerifySuite s) {
  switch (s) {
    case VerifySuite::exact: return {1, 2, 3};
    case VerifySuite::identities: return {8};
    case VerifySuite::all: break;
  }
  std::vector<int> all;
  for (int i = 1; i <= kCriterionCount; ++i) all.push_back(i);
  return all;
}

std::string criterion_title(int id) {
  if (id < 1 || id > kCriterionCount) throw std::out_of_range("no such criterion");
  return kCriteria[id - 1].title;
}

CriterionReport run_criterion(int id, unsigned jobs) {
  CriterionReport rep;
  rep.id = id;
  rep.title = criterion_title(id);
  auto t0 = std::chrono::steady_clock::now();
  Builder b;
  try {
    kCriteria[id - 1].run(b, jobs);
  } catch (const std::exception& e) {
    rep.error = e.what();
  }
  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  rep.checks = std::move(b.checks);
  rep.pass = rep.error.empty() && !rep.checks.empty();
  for (auto& c : rep.checks) rep.pass = rep.pass && c.pass;
  return rep;
}

std::vector<CriterionReport> run_suite(VerifySuite s, unsigned jobs) {
  std::vector<CriterionReport> out;
  for (int id : suite_criteria(s)) out.push_back(run_criterion(id, jobs));
  return out;
}

}  // namespace kz
