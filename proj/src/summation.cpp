#include "kz/summation.hpp"

#include "kz/modular_forms.hpp"
#include "kz/quadrature.hpp"
#include "kz/special_functions.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace kz {

std::string to_string(AverageKind a) {
  switch (a) {
    case AverageKind::mur: return "mur";
    case AverageKind::mul: return "mul";
    case AverageKind::med: return "med";
  }
  return "?";
}

std::string to_string(Route r) {
  switch (r) {
    case Route::erfi_series: return "erfi-series";
    case Route::eta_integral: return "eta-integral";
    case Route::per_singularity_closed_form: return "per-singularity-closed-form";
    case Route::borel_ray_quadrature: return "borel-ray-quadrature";
    case Route::lateral_mean: return "lateral-mean";
    case Route::mul_plus_delta: return "mul-plus-delta";
  }
  return "?";
}

AverageKind parse_average(const std::string& s) {
  if (s == "mur") return AverageKind::mur;
  if (s == "mul") return AverageKind::mul;
  if (s == "med") return AverageKind::med;
  throw std::invalid_argument("unknown average '" + s + "' (expected mur, mul or med)");
}

namespace {

template <class R>
R inf() {
  return std::numeric_limits<R>::infinity();
}

// (k/2)_j
template <class R>
R poch_half(int k, unsigned j) {
  R f = 1;
  for (unsigned m = 0; m < j; ++m) f *= R(k) / 2 + R(m);
  return f;
}

// (k-2)!! for odd k >= 3
template <class R>
R double_factorial(int k) {
  R f = 1;
  for (int m = k - 2; m > 1; m -= 2) f *= R(m);
  return f;
}

template <class R>
void require_odd_weight(const SqrtBranched<R>& g, const char* who) {
  int k = g.weight();
  if (k < 3 || k % 2 == 0)
    throw std::invalid_argument(std::string(who) + ": needs a common odd weight k >= 3");
}

template <class R>
void require_right_half(const Complex<R>& x, const char* who) {
  if (!(x.real() > 0)) throw std::domain_error(std::string(who) + ": needs Re x > 0");
}

// sum_{n > N} |c_n| eta_n^{-q} from the tail law, no cancellation used
template <class R>
R abs_power_tail(const SqrtBranched<R>& g, std::int64_t N, R q) {
  using std::pow;
  if (!g.is_lattice()) {
    R s = 0;
    for (std::int64_t i = N + 1; i <= g.size(); ++i) {
      auto t = g.term(i);
      s += (t.c < 0 ? -t.c : t.c) * pow(t.eta, -q);
    }
    return s;
  }
  const auto& law = g.tail_law();
  R e = 2 * q - law.gamma;
  if (!(e > 1)) return inf<R>();
  R n1 = R(N + 1);
  return law.psi_max * law.amplitude * pow(g.scale(), -q) * pow(n1, -e) * (1 + n1 / (e - 1));
}

// sum_{n > N} |c_n| e^{-eta_n r}
template <class R>
R abs_exp_tail(const SqrtBranched<R>& g, std::int64_t N, R r) {
  using std::exp;
  using std::pow;
  if (!g.is_lattice()) {
    R s = 0;
    for (std::int64_t i = N + 1; i <= g.size(); ++i) {
      auto t = g.term(i);
      s += (t.c < 0 ? -t.c : t.c) * exp(-t.eta * r);
    }
    return s;
  }
  const auto& law = g.tail_law();
  R n1 = R(N + 1), s = g.scale();
  R first = pow(n1, law.gamma) * exp(-s * n1 * n1 * r);
  R ratio = pow(1 + 1 / n1, law.gamma < 0 ? R(0) : law.gamma) * exp(-s * r * (2 * n1 + 1));
  if (!(ratio < 1)) return inf<R>();
  return law.psi_max * law.amplitude * first / (1 - ratio);
}

// smallest N in [lo, budget] with pred(N), assuming monotonicity; -1 if none
template <class R, class P>
std::int64_t search_terms(std::int64_t lo, P&& pred) {
  const std::int64_t budget = SqrtBranched<R>::kTermBudget;
  std::int64_t hi = std::max<std::int64_t>(lo, 1);
  while (!pred(hi)) {
    if (hi >= budget) return -1;
    hi = std::min(budget, hi * 2);
  }
  std::int64_t a = std::max<std::int64_t>(lo, hi / 2) - 1;
  while (hi - a > 1) {
    std::int64_t mid = (a + hi) / 2;
    if (pred(mid))
      hi = mid;
    else
      a = mid;
  }
  return hi;
}

// bound on |delta|-type Stokes pieces: 2^{(k-1)/2} sqrt(pi) |x|^{k/2-1} / (k-2)!!
template <class R>
R stokes_prefactor(int k, const Complex<R>& x) {
  using std::abs;
  using std::pow;
  return pow(R(2), R(k - 1) / 2) * sqrt_pi<R>() * pow(abs(x), R(k) / 2 - 1) /
         double_factorial<R>(k);
}

constexpr double kRemainderConstant = 4;  // |Rem_J| <= 4 |first omitted term|

}  // namespace

namespace {

// |(2y)^m / (k-2)!! * 2 sqrt(pi) / y|, m = (k-3)/2
template <class R>
R median_kernel_factor(int k, const Complex<R>& y) {
  using std::abs;
  using std::pow;
  R m = R((k - 3) / 2);
  return pow(2 * abs(y), m) / double_factorial<R>(k) * (2 * sqrt_pi<R>() / abs(y));
}

}  // namespace

template <class R>
Complex<R> median_kernel(int k, const Complex<R>& y, unsigned J) {
  using std::pow;
  if (k < 3 || k % 2 == 0) throw std::invalid_argument("median_kernel: k must be odd and >= 3");
  unsigned m = static_cast<unsigned>((k - 3) / 2);
  Complex<R> f = pow(R(2) * y, R(m)) / double_factorial<R>(k) * (R(2) * sqrt_pi<R>() / y);
  return f * e_mod_remainder(std::sqrt(y), J + m);
}

template <class R>
Estimate<R> averaged_value(const SqrtBranched<R>& g, AverageKind avg, R p, R tol) {
  using std::abs;
  using std::pow;
  if (!(p >= 0)) throw std::domain_error("averaged_value: needs p >= 0");
  std::int64_t N = g.size();
  if (g.is_lattice()) {
    N = search_terms<R>(1, [&](std::int64_t n) { return g.tail_bound(n, p, 0) <= tol / 2; });
    if (N < 0) throw NonConvergence("averaged_value: tolerance unreachable within the term budget");
  }
  Complex<R> sum(0);
  R mag = 0;
  for (std::int64_t i = 1; i <= N; ++i) {
    auto t = g.term(i);
    if (t.c == 0) continue;
    if (t.eta == p) throw std::domain_error("averaged_value: p is a singularity");
    Complex<R> v;
    if (t.eta > p) {
      v = t.c * pow(t.eta - p, -R(t.k) / 2);
    } else {
      if (avg == AverageKind::med) continue;
      // arg(eta - p) = -pi above the cut, +pi below
      R s = avg == AverageKind::mur ? R(1) : R(-1);
      v = t.c * pow(p - t.eta, -R(t.k) / 2) * std::polar(R(1), s * pi<R>() * R(t.k) / 2);
    }
    sum += v;
    mag += abs(v);
  }
  R err = (g.is_lattice() ? g.tail_bound(N, p, 0) : R(0)) +
          R(4 * (N + 2)) * unit_roundoff<R>() * mag;
  return Estimate<R>{sum, err};
}

template <class R>
SummationResult<R> sum_closed_form(const SqrtBranched<R>& g, const Complex<R>& x, R tol) {
  using std::abs;
  using std::pow;
  require_right_half(x, "sum_closed_form");
  require_odd_weight(g, "sum_closed_form");
  if (!(tol > 0)) throw std::invalid_argument("sum_closed_form: tol must be positive");
  const int k = g.weight();
  const R ax = abs(x), u = unit_roundoff<R>();
  SummationResult<R> out;
  out.x = x;
  out.route = Route::per_singularity_closed_form;
  out.kind = AverageKind::med;
  Complex<R> sum(g.a0.template convert_to<R>());
  R mag = abs(sum), err = 0;

  std::int64_t N = g.size();
  unsigned Jp = 0;
  if (g.is_lattice()) {
    const R radius = std::max<R>(asymptotic_radius_sq<R>(), R(40));
    const R pre = stokes_prefactor<R>(k, x);
    N = -1;
    for (Jp = 4; Jp <= 12; Jp += 2) {
      const R coef = R(kRemainderConstant) * poch_half<R>(k, Jp) * pow(ax, -R(Jp) - 1);
      N = search_terms<R>(1, [&](std::int64_t n) {
        R n1 = R(n + 1);
        if (g.scale() * n1 * n1 * ax < std::max<R>(radius, R(2 * Jp + k))) return false;
        if (pre * abs_exp_tail(g, n, x.real()) > tol / 4) return false;
        return coef * abs_power_tail(g, n, R(k) / 2 + R(Jp)) <= tol / 4;
      });
      if (N >= 0) break;
    }
    if (N < 0) throw NonConvergence("sum_closed_form: tolerance unreachable within the term budget");
  }

  // direct part
  std::vector<R> power_sums(Jp, R(0)), power_mag(Jp, R(0));
  for (std::int64_t i = 1; i <= N; ++i) {
    auto t = g.term(i);
    if (t.c == 0) continue;
    Complex<R> y = t.eta * x;
    Complex<R> v = t.c * pow(t.eta, 1 - R(k) / 2) * median_kernel<R>(k, y, 0);
    sum += v;
    mag += abs(v);
    err += abs(t.c) * pow(t.eta, 1 - R(k) / 2) * median_kernel_factor<R>(k, y) *
           e_mod_rounding_bound(std::sqrt(y));
    R e = pow(t.eta, -R(k) / 2);
    for (unsigned j = 0; j < Jp; ++j, e /= t.eta) {
      power_sums[j] += t.c * e;
      power_mag[j] += abs(t.c * e);
    }
  }
  err += R(8 * (N + 4)) * u * mag;

  // asymptotic part of the tail: sum_j (k/2)_j x^{-j-1} sum_{n>N} c_n eta_n^{-k/2-j}
  if (Jp > 0) {
    std::vector<R> b(Jp);
    std::vector<R> b_err(Jp, R(0));
    if (g.exact_taylor) {
      for (unsigned j = 0; j < Jp; ++j) b[j] = g.exact_taylor(j).template convert_to<R>();
    } else {
      auto tc = taylor_coeffs(g, Jp, tol * R(1e-3));
      for (unsigned j = 0; j < Jp; ++j) {
        b[j] = tc.numeric[j].value.real();
        b_err[j] = tc.numeric[j].error;
      }
    }
    Complex<R> xinv = R(1) / x, xp = xinv;
    R jfact = 1;
    for (unsigned j = 0; j < Jp; ++j) {
      if (j > 0) jfact *= R(j);
      R ph = poch_half<R>(k, j);
      R full = jfact * b[j] / ph;
      R T = full - power_sums[j];
      sum += ph * xp * T;
      R scale = ph * pow(ax, -R(j) - 1);
      err += scale * (R(8) * u * (abs(full) + power_mag[j] * R(N + 4)) + jfact * b_err[j] / ph);
      xp *= xinv;
    }
    err += R(kRemainderConstant) * poch_half<R>(k, Jp) * pow(ax, -R(Jp) - 1) *
               abs_power_tail(g, N, R(k) / 2 + R(Jp)) +
           stokes_prefactor<R>(k, x) * abs_exp_tail(g, N, x.real());
  }
  out.value = sum;
  out.err_estimate = err;
  out.terms = N;
  return out;
}

template <class R>
SummationResult<R> sum_erfi(const SqrtBranched<R>& g, const Complex<R>& x, R tol) {
  if (g.weight() != 5) throw std::invalid_argument("sum_erfi: needs weight 5");
  auto r = sum_closed_form(g, x, tol);
  r.route = Route::erfi_series;
  return r;
}

template <class R>
Estimate<R> dirichlet_delta(const SqrtBranched<R>& g, const Complex<R>& x, R tol) {
  using std::abs;
  using std::exp;
  using std::pow;
  require_right_half(x, "dirichlet_delta");
  require_odd_weight(g, "dirichlet_delta");
  const int k = g.weight();
  const R pre = stokes_prefactor<R>(k, x);
  std::int64_t N = g.size();
  if (g.is_lattice()) {
    N = search_terms<R>(1, [&](std::int64_t n) { return pre * abs_exp_tail(g, n, x.real()) <= tol / 2; });
    if (N < 0) throw NonConvergence("dirichlet_delta: tolerance unreachable within the term budget");
  }
  Complex<R> sum(0);
  R mag = 0;
  for (std::int64_t i = 1; i <= N; ++i) {
    auto t = g.term(i);
    if (t.c == 0) continue;
    Complex<R> v = t.c * exp(-t.eta * x);
    sum += v;
    mag += abs(v);
  }
  Complex<R> f = Complex<R>(0, 1) * pow(R(2), R(k - 1) / 2) * sqrt_pi<R>() *
                 pow(x, R(k) / 2 - 1) / double_factorial<R>(k);
  R err = pre * ((g.is_lattice() ? abs_exp_tail(g, N, x.real()) : R(0)) +
                 R(8 * (N + 4)) * unit_roundoff<R>() * mag);
  return Estimate<R>{f * sum, err};
}

template <class R>
SummationResult<R> sum_lateral(const SqrtBranched<R>& g, AverageKind which, const Complex<R>& x,
                               R tol) {
  auto r = sum_closed_form(g, x, tol / 2);
  r.kind = which;
  if (which == AverageKind::med) return r;
  auto d = dirichlet_delta(g, x, tol / 2);
  r.value += which == AverageKind::mur ? d.value : -d.value;
  r.err_estimate += d.error;
  return r;
}

template <class R>
SummationResult<R> sum_eta_integral(AverageKind which, const Complex<R>& x, R eps, R tol) {
  using std::abs;
  using std::arg;
  using std::cos;
  using std::exp;
  using std::pow;
  using std::sin;
  using std::sqrt;
  if (which == AverageKind::med) throw std::invalid_argument("sum_eta_integral: mur or mul only");
  if (x == Complex<R>(0)) throw std::domain_error("sum_eta_integral: x = 0");
  if (!(eps > 0) || !(eps < pi<R>() / 2))
    throw std::invalid_argument("sum_eta_integral: eps must lie in (0, pi/2)");
  const R half_pi = pi<R>() / 2;
  const R ax = abs(x);
  const R s = which == AverageKind::mur ? R(1) : R(-1);
  R theta = arg(x) + s * eps;
  int halvings = 0;
  while (!(abs(theta) < half_pi - R(1e-3))) {
    eps /= 2;
    theta = arg(x) + s * eps;
    if (++halvings > 40) throw std::domain_error("sum_eta_integral: x outside the lateral sector");
  }
  if (!(ax * sin(eps) >= sqrt(tol)))
    throw std::domain_error("sum_eta_integral: ray passes too close to z = x");
  const R c = cos(theta), r3 = sqrt(R(3));
  const Complex<R> I(0, 1);
  auto f = [&](const Complex<R>& z) {
    Complex<R> e = eta<R>(2 * pi<R>() * I * z, tol * R(1e-3)).value;
    return r3 * e * pow(Complex<R>(1) - z / x, R(-1.5));
  };
  auto envelope = [&](R Rr) {
    R d = Rr > 2 * ax ? Rr / ax - 1 : sin(eps);
    d = std::max(d, sin(eps));
    return r3 * R(1.01) * 6 / (pi<R>() * pi<R>() * c) * exp(-pi<R>() * pi<R>() * Rr * c / 6) *
           pow(d, R(-1.5));
  };
  QuadratureOptions opt;
  opt.initial_panels = 16;
  auto q = ray_integrate_auto<R>(f, theta, tol, envelope, Complex<R>(0), opt);
  SummationResult<R> out;
  out.value = q.value;
  out.err_estimate = q.error;
  out.route = Route::eta_integral;
  out.kind = which;
  out.x = x;
  out.terms = static_cast<std::int64_t>(q.evaluations);
  return out;
}

template <class R>
SummationResult<R> sum_lateral_ray(const SqrtBranched<R>& g, AverageKind which,
                                   const Complex<R>& x, R tol) {
  using std::abs;
  using std::arg;
  using std::exp;
  using std::pow;
  using std::sin;
  if (which == AverageKind::med) throw std::invalid_argument("sum_lateral_ray: mur or mul only");
  require_odd_weight(g, "sum_lateral_ray");
  const R half_pi = pi<R>() / 2, ax = arg(x);
  R phi;
  if (which == AverageKind::mur)
    phi = std::min(pi<R>() / 4, (half_pi - ax) / 2);
  else
    phi = -std::min(pi<R>() / 4, (half_pi + ax) / 2);
  if (!(which == AverageKind::mur ? phi > 0 : phi < 0))
    throw std::domain_error("sum_lateral_ray: x outside the lateral sector");
  const R rho = (x * std::polar(R(1), phi)).real();
  const int k = g.weight();
  // |G| <= sin|phi|^{-k/2} sum |c_n| eta_n^{-k/2} along the ray
  R gmax = 0;
  const std::int64_t head = g.is_lattice() ? 2000 : g.size();
  for (std::int64_t i = 1; i <= head; ++i) {
    auto t = g.term(i);
    gmax += abs(t.c) * pow(t.eta, -R(t.k) / 2);
  }
  if (g.is_lattice()) gmax += abs_power_tail(g, head, R(k) / 2);
  gmax *= pow(abs(sin(phi)), -R(k) / 2);
  const R inner = tol / (10 * std::max<R>(R(1), R(1) / rho));
  auto f = [&](const Complex<R>& p) {
    return exp(-x * p) * eval(g, SheetedPoint<R>{p}, inner).value;
  };
  auto envelope = [&](R Rr) { return gmax * exp(-Rr * rho) / rho; };
  auto q = ray_integrate_auto<R>(f, phi, tol / 2, envelope);
  SummationResult<R> out;
  out.value = g.a0.template convert_to<R>() + q.value;
  out.err_estimate = q.error + inner * R(2) / rho;
  out.route = Route::borel_ray_quadrature;
  out.kind = which;
  out.x = x;
  out.terms = static_cast<std::int64_t>(q.evaluations);
  return out;
}

template <class R>
SummationResult<R> sum_median(const SqrtBranched<R>& g, const Complex<R>& x, R tol,
                              bool cross_check) {
  using std::abs;
  auto base = g.weight() == 5 ? sum_erfi(g, x, tol) : sum_closed_form(g, x, tol);
  if (!cross_check) return base;
  base.cross.push_back({base.route, base.value, base.err_estimate});
  const bool trefoil = g.name() == "trefoil";
  auto lateral = [&](AverageKind w) {
    return trefoil ? sum_eta_integral<R>(w, x, pi<R>() / 16, tol)
                   : sum_lateral_ray<R>(g, w, x, tol);
  };
  auto mul = lateral(AverageKind::mul);
  auto mur = lateral(AverageKind::mur);
  Complex<R> mean = (mul.value + mur.value) / R(2);
  R mean_err = (mul.err_estimate + mur.err_estimate) / 2;
  auto d = dirichlet_delta(g, x, tol);
  Complex<R> mpd = mul.value + d.value;
  base.cross.push_back({Route::lateral_mean, mean, mean_err});
  base.cross.push_back({Route::mul_plus_delta, mpd, mul.err_estimate + d.error});
  base.discrepancy = std::max(abs(mean - base.value), abs(mpd - base.value));
  base.err_estimate += base.discrepancy;
  return base;
}

template <class R>
LadderSpec<R> default_radial_ladder(const RationalAngle& alpha) {
  Integer num = numerator(alpha.alpha);
  if (num < 0) num = -num;
  if (num == 0) throw std::domain_error("radial_limit: alpha must be nonzero");
  R a = R(num.template convert_to<double>());
  LadderSpec<R> s;
  s.eps0 = R(1) / (960 * a * a);
  s.ratio = 2;
  s.rungs = 6;
  return s;
}

template <class R>
LadderResult<R> radial_limit(const SqrtBranched<R>& g, const RationalAngle& alpha,
                             const LadderSpec<R>& ladder, R tol) {
  if (alpha.alpha == 0) throw std::domain_error("radial_limit: alpha must be nonzero");
  const R im = R(1) / (2 * pi<R>() * alpha.alpha.template convert_to<R>());
  auto r = extrapolate_ladder<R>(
      [&](R e) { return sum_median(g, Complex<R>(e, im), tol).value; }, ladder);
  if (!r.converged) throw NonConvergence("radial_limit: ladder does not settle");
  return r;
}

#define KZ_INSTANTIATE(R)                                                                      \
  template Estimate<R> averaged_value(const SqrtBranched<R>&, AverageKind, R, R);              \
  template Complex<R> median_kernel(int, const Complex<R>&, unsigned);                         \
  template SummationResult<R> sum_closed_form(const SqrtBranched<R>&, const Complex<R>&, R);   \
  template SummationResult<R> sum_erfi(const SqrtBranched<R>&, const Complex<R>&, R);          \
  template Estimate<R> dirichlet_delta(const SqrtBranched<R>&, const Complex<R>&, R);          \
  template SummationResult<R> sum_eta_integral(AverageKind, const Complex<R>&, R, R);          \
  template SummationResult<R> sum_lateral_ray(const SqrtBranched<R>&, AverageKind,             \
                                              const Complex<R>&, R);                           \
  template SummationResult<R> sum_lateral(const SqrtBranched<R>&, AverageKind,                 \
                                          const Complex<R>&, R);                               \
  template SummationResult<R> sum_median(const SqrtBranched<R>&, const Complex<R>&, R, bool);  \
  template LadderSpec<R> default_radial_ladder<R>(const RationalAngle&);                       \
  template LadderResult<R> radial_limit(const SqrtBranched<R>&, const RationalAngle&,          \
                                        const LadderSpec<R>&, R);

KZ_INSTANTIATE(double)
KZ_INSTANTIATE(Quad)
#undef KZ_INSTANTIATE

}  // namespace kz
