#include "kz/special_functions.hpp"

#include "kz/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace kz {

template <class R>
R asymptotic_radius_sq() {
  using std::log;
  // smallest asymptotic term near k = |z|^2 is about exp(-|z|^2)
  return -log(unit_roundoff<R>()) + 8;
}

namespace {

template <class R>
int stokes_sign(const Complex<R>& z) {
  if (z.imag() > 0) return 1;
  if (z.imag() < 0) return -1;
  return 0;
}

// sum_{k >= k0} (2k-1)!!/(2 z^2)^k, stopped at the smallest term
template <class R>
Complex<R> asymptotic_tail(const Complex<R>& z, unsigned k0) {
  using std::abs;
  Complex<R> w = R(1) / (R(2) * z * z);
  Complex<R> term(1);
  for (unsigned k = 1; k <= k0; ++k) term *= R(2 * k - 1) * w;
  if (k0 == 0) term = Complex<R>(1);
  Complex<R> sum(0);
  R eps = unit_roundoff<R>();
  R last = abs(term) * 2 + 1;
  for (unsigned k = k0; k < 100000; ++k) {
    R a = abs(term);
    if (a > last) break;  // past the smallest term
    sum += term;
    if (a <= eps * abs(sum)) break;
    last = a;
    term *= R(2 * k + 1) * w;
  }
  return sum;
}

// Taylor re-expansion of D along the segment [0, z], D' = 1 - 2 z D.
template <class R>
Complex<R> dawson_taylor(const Complex<R>& z) {
  using std::abs;
  R len = abs(z);
  Complex<R> dir = z / len;
  R eps = unit_roundoff<R>();
  R t = 0;
  Complex<R> d(0);
  while (t < len) {
    // keep |2 z0 h| <= 2 so the local series stays well conditioned
    R h = std::min<R>(R(0.5), R(1) / (t + R(0.01)));
    if (t + h > len) h = len - t;
    Complex<R> z0 = dir * t, step = dir * h;
    Complex<R> dkm1 = d, dk = Complex<R>(1) - R(2) * z0 * d;
    Complex<R> sum = dkm1 + dk * step, pw = step;
    int small = 0;
    for (unsigned k = 1; k < 400; ++k) {
      Complex<R> next = -(R(2) * z0 * dk + R(2) * dkm1) / R(k + 1);
      pw *= step;
      Complex<R> term = next * pw;
      sum += term;
      if (abs(term) <= eps * abs(sum)) {
        if (++small >= 2) break;
      } else {
        small = 0;
      }
      dkm1 = dk;
      dk = next;
    }
    d = sum;
    t += h;
  }
  return d;
}

}  // namespace

template <class R>
Complex<R> dawson(const Complex<R>& z) {
  using std::exp;
  using std::norm;
  if (z == Complex<R>(0)) return Complex<R>(0);
  if (z.real() < 0 || (z.real() == 0 && z.imag() < 0)) return -dawson(-z);
  if (norm(z) >= asymptotic_radius_sq<R>()) {
    Complex<R> d = asymptotic_tail(z, 0) / (R(2) * z);
    int s = stokes_sign(z);
    if (s != 0) d += R(s) * Complex<R>(0, 1) * (sqrt_pi<R>() / 2) * exp(-z * z);
    return d;
  }
  return dawson_taylor(z);
}

template <class R>
Complex<R> ScaledValue<R>::value() const {
  using std::exp;
  using std::log;
  if (mantissa == Complex<R>(0)) return Complex<R>(0);
  R lg = exponent.real() + log(std::abs(mantissa));
  if (lg > log(std::numeric_limits<R>::max()) - 1)
    throw std::overflow_error("erfi: value out of range; use erfi_scaled");
  return mantissa * exp(exponent);
}

template <class R>
ScaledValue<R> erfi_scaled(const Complex<R>& z) {
  return ScaledValue<R>{R(2) / sqrt_pi<R>() * dawson(z), z * z};
}

template <class R>
Complex<R> erfi(const Complex<R>& z) {
  using std::exp;
  using std::norm;
  if (z.real() < 0 || (z.real() == 0 && z.imag() < 0)) return -erfi(-z);
  if (norm(z) >= asymptotic_radius_sq<R>() && (z * z).real() < 0) {
    // exp(z^2) is small here while D(z) is large; combine analytically.
    Complex<R> a = asymptotic_tail(z, 0) / (R(2) * z);
    return R(2) / sqrt_pi<R>() * exp(z * z) * a +
           R(stokes_sign(z)) * Complex<R>(0, 1);
  }
  return erfi_scaled(z).value();
}

template <class R>
Complex<R> e_mod_remainder(const Complex<R>& z0, unsigned J) {
  using std::exp;
  using std::norm;
  Complex<R> z = z0;
  if (z.real() < 0 || (z.real() == 0 && z.imag() < 0)) z = -z;  // E is even
  R rpi = sqrt_pi<R>();
  Complex<R> z2 = z * z;
  if (norm(z) >= asymptotic_radius_sq<R>()) {
    Complex<R> e = z2 / rpi * asymptotic_tail(z, J + 1);
    int s = stokes_sign(z);
    if (s != 0) e += R(s) * Complex<R>(0, 1) * z2 * z * exp(-z2);
    return e;
  }
  Complex<R> e = R(2) / rpi * z2 * z * dawson(z) - z2 / rpi;
  // subtract (1/sqrt pi) sum_{k=1}^{J} (2k-1)!!/2^k z^{2-2k}
  Complex<R> term(R(1) / (2 * rpi), 0), inv = R(1) / z2;
  for (unsigned k = 1; k <= J; ++k) {
    if (k > 1) term *= R(2 * k - 1) / R(2) * inv;
    e -= term;
  }
  return e;
}

template <class R>
Complex<R> e_mod(const Complex<R>& z) {
  return e_mod_remainder(z, 0);
}

template <class R>
R e_mod_rounding_bound(const Complex<R>& z) {
  using std::norm;
  R r2 = norm(z), u = unit_roundoff<R>();
  // direct branch: z^3 D(z) cancels against z^2; Taylor stepping adds O(|z|^2) steps
  if (r2 < asymptotic_radius_sq<R>()) return 32 * u * (r2 + 1) * (r2 + 1) / sqrt_pi<R>();
  return 16 * u * r2 / sqrt_pi<R>();
}

template <class R>
const GaussRule<R>& gauss_legendre(unsigned n) {
  static std::mutex mutex;
  static std::map<unsigned, GaussRule<R>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  using std::abs;
  using std::cos;
  GaussRule<R> rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (unsigned i = 0; i < n; ++i) {
    R x = cos(pi<R>() * (R(i) + R(0.75)) / (R(n) + R(0.5)));
    R dp = 0;
    for (int iter = 0; iter < 100; ++iter) {
      R p0 = 1, p1 = x;
      for (unsigned k = 2; k <= n; ++k) {
        R p2 = (R(2 * k - 1) * x * p1 - R(k - 1) * p0) / R(k);
        p0 = p1;
        p1 = p2;
      }
      dp = R(n) * (x * p1 - p0) / (x * x - 1);
      R dx = p1 / dp;
      x -= dx;
      if (abs(dx) <= 4 * unit_roundoff<R>()) break;
    }
    // refresh the derivative at the converged node
    R p0 = 1, p1 = x;
    for (unsigned k = 2; k <= n; ++k) {
      R p2 = (R(2 * k - 1) * x * p1 - R(k - 1) * p0) / R(k);
      p0 = p1;
      p1 = p2;
    }
    dp = R(n) * (x * p1 - p0) / (x * x - 1);
    rule.nodes[i] = x;
    rule.weights[i] = R(2) / ((1 - x * x) * dp * dp);
  }
  return cache.emplace(n, std::move(rule)).first->second;
}

#define KZ_INSTANTIATE(R)                                            \
  template R asymptotic_radius_sq<R>();                              \
  template Complex<R> dawson(const Complex<R>&);                     \
  template struct ScaledValue<R>;                                    \
  template ScaledValue<R> erfi_scaled(const Complex<R>&);            \
  template Complex<R> erfi(const Complex<R>&);                       \
  template Complex<R> e_mod(const Complex<R>&);                      \
  template R e_mod_rounding_bound(const Complex<R>&);                \
  template Complex<R> e_mod_remainder(const Complex<R>&, unsigned);  \
  template const GaussRule<R>& gauss_legendre<R>(unsigned);

KZ_INSTANTIATE(double)
KZ_INSTANTIATE(Quad)
#undef KZ_INSTANTIATE

}  // namespace kz
