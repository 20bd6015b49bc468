#include "kz/modular_forms.hpp"

#include "kz/characters.hpp"
#include "kz/quadrature.hpp"
#include "kz/summation.hpp"

#include <cmath>
#include <stdexcept>

namespace kz {

namespace {

template <class R>
void require_upper(const Complex<R>& z, const char* who) {
  if (!(z.imag() > 0)) throw std::domain_error(std::string(who) + ": needs Im z > 0");
}

// Sums chi(n) n^m w(n) until the geometric tail bound on |terms| drops below
// target; a = pi Im z / 12 controls the Gaussian decay.
template <class R, class Phase>
Estimate<R> lacunary_sum(unsigned m, R a, R target, Phase&& phase) {
  using std::abs;
  using std::exp;
  using std::pow;
  const std::int64_t budget = 50000000;
  Complex<R> sum(0);
  R mag = 0, tail = 0;
  std::int64_t n = 1;
  for (;; ++n) {
    if (n > budget) throw NonConvergence("lacunary sum: term budget exhausted");
    int c = chi12(n);
    R nn = R(n);
    if (c != 0) {
      Complex<R> t = R(c) * pow(nn, R(m)) * phase(n);
      sum += t;
      mag += abs(t);
    }
    // bound on sum_{k > n} k^m e^{-a k^2}
    R n1 = nn + 1;
    R first = pow(n1, R(m)) * exp(-a * n1 * n1);
    R ratio = pow(1 + 1 / n1, R(m)) * exp(-a * (2 * n1 + 1));
    if (ratio < 1 && n >= 4) {
      tail = first / (1 - ratio);
      if (tail <= target) break;
    }
  }
  R err = tail + R(4 * (n + 4)) * unit_roundoff<R>() * mag;
  return Estimate<R>{sum, err};
}

}  // namespace

template <class R>
Estimate<R> weighted_theta(const Complex<R>& z, unsigned m, R tol) {
  using std::exp;
  require_upper(z, "weighted_theta");
  if (m > 2) throw std::invalid_argument("weighted_theta: weight power must be 0, 1 or 2");
  const R a = pi<R>() * z.imag() / 12;
  const Complex<R> iz = Complex<R>(0, 1) * pi<R>() * z / R(12);
  return lacunary_sum<R>(m, a, tol / 2, [&](std::int64_t n) {
    R nn = R(n);
    return exp(nn * nn * iz);
  });
}

template <class R>
Estimate<R> eta_tilde(const Complex<R>& z, R tol) {
  require_upper(z, "eta_tilde");
  return weighted_theta(z, 1, tol);
}

template <class R>
Estimate<R> eta_tilde_at(const RationalAngle& alpha, R eps, R tol) {
  using std::exp;
  if (!(eps > 0)) throw std::domain_error("eta_tilde_at: needs eps > 0");
  const R a = pi<R>() * eps / 12;
  return lacunary_sum<R>(1, a, tol / 2, [&](std::int64_t n) {
    R nn = R(n);
    // exp(pi i n^2 alpha / 12) = e(n^2 alpha / 24)
    Rational frac = alpha.alpha * Rational(Integer(n) * Integer(n), 24);
    return root_of_unity<R>(frac) * exp(-a * nn * nn);
  });
}

template <class R>
Estimate<R> eta(const Complex<R>& z, R tol, EtaMode mode) {
  using std::abs;
  using std::exp;
  using std::floor;
  using std::log;
  require_upper(z, "eta");
  if (!(tol > 0)) throw std::invalid_argument("eta: tol must be positive");
  const Complex<R> I(0, 1);
  if (mode == EtaMode::product) {
    Complex<R> q = exp(2 * pi<R>() * I * z);
    R aq = abs(q);
    if (!(aq < 1)) throw std::domain_error("eta: |q| must be < 1");
    Complex<R> prod(1), qn(1);
    std::int64_t n = 0;
    R rel = 0;
    for (;;) {
      ++n;
      if (n > 10000000) throw NonConvergence("eta: product budget exhausted");
      qn *= q;
      prod *= Complex<R>(1) - qn;
      R s = abs(qn) * aq / (1 - aq);
      s /= 1 - abs(qn) * aq;
      rel = exp(s) - 1;
      R pref = abs(exp(pi<R>() * I * z / R(12)));
      if (pref * abs(prod) * rel <= tol / 2) break;
    }
    Complex<R> v = exp(pi<R>() * I * z / R(12)) * prod;
    R err = abs(v) * rel + R(8 * (n + 2)) * unit_roundoff<R>() * abs(v);
    return Estimate<R>{v, err};
  }
  // reduce: eta(z) = e(k/24) eta(z - k), eta(w) = eta(-1/w) / sqrt(-i w)
  Complex<R> w = z, mult(1);
  int steps = 0;
  for (;;) {
    R k = floor(w.real() + R(0.5));
    if (k != 0) {
      mult *= root_of_unity<R>(Rational(static_cast<long>(k), 24));
      w -= k;
      ++steps;
    }
    if (std::norm(w) >= 1) break;
    mult /= std::sqrt(-I * w);
    w = R(-1) / w;
    if (++steps > 10000) throw NonConvergence("eta: reduction did not terminate");
  }
  R am = abs(mult);
  auto inner = weighted_theta(w, 0, tol / (2 * am));
  Complex<R> v = mult * inner.value;
  R err = am * inner.error + R(8 * (steps + 1)) * unit_roundoff<R>() * abs(v);
  return Estimate<R>{v, err};
}

template <class R>
LadderSpec<R> default_eta_tilde_ladder(const RationalAngle& alpha) {
  R d = R(alpha.order());
  LadderSpec<R> s;
  s.eps0 = R(0.01) / (d * d);
  s.ratio = 2;
  s.rungs = 6;
  return s;
}

template <class R>
LadderResult<R> eta_tilde_radial(const RationalAngle& alpha, const LadderSpec<R>& ladder, R tol) {
  auto r = extrapolate_ladder<R>(
      [&](R e) { return eta_tilde_at<R>(alpha, e, tol).value; }, ladder);
  if (!r.converged) throw NonConvergence("eta_tilde_radial: ladder does not settle");
  return r;
}

template <class R>
Estimate<R> zagier_g(R x, R tol, GMode mode) {
  using std::abs;
  using std::exp;
  using std::pow;
  using std::sqrt;
  if (x == 0) throw std::domain_error("zagier_g: g is not analytic at 0");
  const Complex<R> I(0, 1);
  if (mode == GMode::delegate) {
    Complex<R> X = I / (2 * pi<R>() * x);
    auto s = sum_eta_integral<R>(x > 0 ? AverageKind::mul : AverageKind::mur, X, pi<R>() / 16, tol);
    return Estimate<R>{s.value, s.err_estimate};
  }
  // K i int_0^inf eta(i t) (i t - x)^{-3/2} dt, K = sqrt(3) e^{i pi/4} / (2 pi)
  const Complex<R> K = sqrt(R(3)) * std::polar(R(1), pi<R>() / 4) / (2 * pi<R>());
  const R qtol = tol / (2 * abs(K));
  auto f = [&](const Complex<R>& t) {
    Complex<R> eval_pt = I * t.real();
    R e = eta<R>(eval_pt, qtol * R(1e-3)).value.real();
    return e * pow(eval_pt - Complex<R>(x), R(-1.5));
  };
  auto envelope = [&](R T) {
    return R(1.01) * (12 / pi<R>()) * exp(-pi<R>() * T / 12) * pow(T, R(-1.5));
  };
  auto q = ray_integrate_auto<R>(f, R(0), qtol, envelope);
  Complex<R> v = K * I * q.value;
  return Estimate<R>{v, abs(K) * q.error};
}

#define KZ_INSTANTIATE(R)                                                                \
  template Estimate<R> eta(const Complex<R>&, R, EtaMode);                               \
  template Estimate<R> weighted_theta(const Complex<R>&, unsigned, R);                   \
  template Estimate<R> eta_tilde(const Complex<R>&, R);                                  \
  template Estimate<R> eta_tilde_at(const RationalAngle&, R, R);                         \
  template LadderSpec<R> default_eta_tilde_ladder<R>(const RationalAngle&);              \
  template LadderResult<R> eta_tilde_radial(const RationalAngle&, const LadderSpec<R>&, R); \
  template Estimate<R> zagier_g(R, R, GMode);

KZ_INSTANTIATE(double)
KZ_INSTANTIATE(Quad)
#undef KZ_INSTANTIATE

}  // namespace kz
