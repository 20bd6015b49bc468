#include "kz/series.hpp"

#include <algorithm>
#include <mutex>
#include <stdexcept>

namespace kz {

Integer factorial(unsigned n) {
  Integer r = 1;
  for (unsigned k = 2; k <= n; ++k) r *= k;
  return r;
}

Rational pow_rational(const Rational& base, unsigned e) {
  Rational r = 1, b = base;
  while (e) {
    if (e & 1u) r *= b;
    e >>= 1;
    if (e) b *= b;
  }
  return r;
}

std::string to_string(const Rational& q) {
  Integer num = boost::multiprecision::numerator(q);
  Integer den = boost::multiprecision::denominator(q);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

Rational parse_rational(const std::string& s) {
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rational(Integer(s));
    Integer num(s.substr(0, slash));
    Integer den(s.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator in '" + s + "'");
    return Rational(num, den);
  } catch (const std::runtime_error&) {
    throw std::invalid_argument("not a rational number: '" + s + "'");
  }
}

FormalSeries::FormalSeries(SeriesVariable var, std::size_t order) : var_(var), c_(order) {}

FormalSeries::FormalSeries(SeriesVariable var, std::vector<Rational> coeffs)
    : var_(var), c_(std::move(coeffs)) {}

FormalSeries FormalSeries::truncated(std::size_t order) const {
  if (order > c_.size()) throw std::invalid_argument("truncated: order exceeds series order");
  return FormalSeries(var_, std::vector<Rational>(c_.begin(), c_.begin() + order));
}

static void require_same_variable(const FormalSeries& a, const FormalSeries& b) {
  if (a.variable() != b.variable())
    throw std::invalid_argument("series in different variables");
}

FormalSeries& FormalSeries::operator+=(const FormalSeries& o) {
  require_same_variable(*this, o);
  c_.resize(std::min(c_.size(), o.c_.size()));
  for (std::size_t n = 0; n < c_.size(); ++n) c_[n] += o.c_[n];
  return *this;
}

FormalSeries& FormalSeries::operator-=(const FormalSeries& o) {
  require_same_variable(*this, o);
  c_.resize(std::min(c_.size(), o.c_.size()));
  for (std::size_t n = 0; n < c_.size(); ++n) c_[n] -= o.c_[n];
  return *this;
}

FormalSeries& FormalSeries::operator*=(const Rational& s) {
  for (auto& c : c_) c *= s;
  return *this;
}

std::vector<Rational> multiply_truncated(std::span<const Rational> a,
                                         std::span<const Rational> b,
                                         std::size_t order) {
  std::vector<Rational> r(order);
  for (std::size_t i = 0; i < std::min(order, a.size()); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size() && i + j < order; ++j) r[i + j] += a[i] * b[j];
  }
  return r;
}

FormalSeries operator*(const FormalSeries& a, const FormalSeries& b) {
  require_same_variable(a, b);
  std::size_t order = std::min(a.order(), b.order());
  return FormalSeries(a.variable(), multiply_truncated(a.coeffs(), b.coeffs(), order));
}

namespace {

constexpr unsigned kMaxBernoulli = 4096;

std::mutex bernoulli_mutex;
std::vector<Rational> bernoulli_cache{Rational(1)};

}  // namespace

Rational bernoulli_number(unsigned n) {
  if (n > kMaxBernoulli) throw std::out_of_range("bernoulli_number: index too large");
  if (n > 1 && n % 2 == 1) return 0;
  std::lock_guard<std::mutex> lock(bernoulli_mutex);
  auto& B = bernoulli_cache;
  // sum_{k=0}^{m} C(m+1,k) B_k = 0
  while (B.size() <= n) {
    unsigned m = static_cast<unsigned>(B.size());
    Rational s = 0;
    Integer binom = 1;  // C(m+1, k)
    for (unsigned k = 0; k < m; ++k) {
      s += binom * B[k];
      binom = binom * (m + 1 - k) / (k + 1);
    }
    B.push_back(-s / (m + 1));
  }
  return B[n];
}

Rational bernoulli_poly(unsigned n, const Rational& x) {
  // Horner on sum_k C(n,k) B_k x^{n-k}, highest power first.
  Rational r = 0;
  Integer binom = 1;
  for (unsigned k = 0; k <= n; ++k) {
    r = r * x + binom * bernoulli_number(k);
    binom = binom * (n - k) / (k + 1);
  }
  return r;
}

FormalSeries borel_transform(const FormalSeries& f) {
  if (f.variable() != SeriesVariable::inverse_x)
    throw std::invalid_argument("borel_transform: expected a series in 1/x");
  if (f.order() < 1) throw std::invalid_argument("borel_transform: empty series");
  std::vector<Rational> out(f.order() - 1);
  Integer fact = 1;
  for (std::size_t n = 0; n + 1 < f.order(); ++n) {
    if (n > 0) fact *= n;
    out[n] = f[n + 1] / fact;
  }
  return FormalSeries(SeriesVariable::p, std::move(out));
}

FormalSeries hadamard_product(const FormalSeries& f, const FormalSeries& g) {
  require_same_variable(f, g);
  std::size_t order = std::min(f.order(), g.order());
  std::vector<Rational> out(order);
  for (std::size_t n = 0; n < order; ++n) out[n] = f[n] * g[n];
  return FormalSeries(f.variable(), std::move(out));
}

FormalSeries series_quotient_even(std::span<const Rational> num_sq,
                                  std::span<const Rational> den_sq,
                                  std::size_t order) {
  if (den_sq.empty() || den_sq[0] == 0)
    throw std::domain_error("series_quotient_even: denominator has zero constant term");
  std::vector<Rational> q(order);
  for (std::size_t m = 0; m < order; ++m) {
    Rational s = m < num_sq.size() ? num_sq[m] : Rational(0);
    for (std::size_t j = 1; j <= m && j < den_sq.size(); ++j) s -= den_sq[j] * q[m - j];
    q[m] = s / den_sq[0];
  }
  return FormalSeries(SeriesVariable::p, std::move(q));
}

std::vector<Rational> cos_series_sq(const Rational& m, std::size_t order) {
  std::vector<Rational> c(order);
  Rational m2 = m * m, term = 1;
  for (std::size_t k = 0; k < order; ++k) {
    c[k] = term;
    term = -term * m2 / ((2 * k + 1) * (2 * k + 2));
  }
  return c;
}

std::vector<Rational> sinc_series_sq(const Rational& m, std::size_t order) {
  std::vector<Rational> c(order);
  Rational m2 = m * m, term = m;
  for (std::size_t k = 0; k < order; ++k) {
    c[k] = term;
    term = -term * m2 / ((2 * k + 2) * (2 * k + 3));
  }
  return c;
}

}  // namespace kz
