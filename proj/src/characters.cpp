#include "kz/characters.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace kz {

PeriodicCharacter::PeriodicCharacter(std::string name, std::vector<int> table)
    : name_(std::move(name)), modulus_(static_cast<int>(table.size())), table_(std::move(table)) {
  if (modulus_ == 0) throw std::invalid_argument("empty residue table");
  long s = 0, sum_period = 0;
  for (int v : table_) sum_period += v;
  if (sum_period != 0) {
    partial_bound_ = -1;  // no cancellation over a period
    return;
  }
  for (int n = 1; n <= modulus_; ++n) {
    s += (*this)(n);
    partial_bound_ = std::max<int>(partial_bound_, static_cast<int>(std::labs(s)));
  }
}

bool PeriodicCharacter::is_odd() const {
  for (int r = 0; r < modulus_; ++r)
    if ((*this)(-r) != -(*this)(r)) return false;
  return true;
}

bool PeriodicCharacter::is_even() const {
  for (int r = 0; r < modulus_; ++r)
    if ((*this)(-r) != (*this)(r)) return false;
  return true;
}

namespace {

std::vector<int> table_from(int modulus, std::initializer_list<int> plus,
                            std::initializer_list<int> minus) {
  std::vector<int> t(modulus, 0);
  for (int r : plus) t[r] = 1;
  for (int r : minus) t[r] = -1;
  return t;
}

}  // namespace

const PeriodicCharacter& PeriodicCharacter::chi12() {
  static const PeriodicCharacter c("chi12", table_from(12, {1, 11}, {5, 7}));
  return c;
}

const PeriodicCharacter& PeriodicCharacter::chi60_1() {
  static const PeriodicCharacter c(
      "chi60_1", table_from(60, {37, 43, 47, 53}, {7, 13, 17, 23}));
  return c;
}

const PeriodicCharacter& PeriodicCharacter::chi60_2() {
  static const PeriodicCharacter c(
      "chi60_2", table_from(60, {31, 41, 49, 59}, {1, 11, 19, 29}));
  return c;
}

int chi12(std::int64_t n) { return PeriodicCharacter::chi12()(n); }

int chi60(int which, std::int64_t n) {
  if (which == 1) return PeriodicCharacter::chi60_1()(n);
  if (which == 2) return PeriodicCharacter::chi60_2()(n);
  throw std::invalid_argument("chi60: which must be 1 or 2");
}

PiPowerMultiple l_value_exact(unsigned n) {
  // L(2n+2) = pi^{2n+2} (-4)^n / (sqrt3 (2n+1)! (n+1)) (B_{2n+2}(1/12) - B_{2n+2}(5/12))
  unsigned m = 2 * n + 2;
  Rational diff = bernoulli_poly(m, Rational(1, 12)) - bernoulli_poly(m, Rational(5, 12));
  Rational scale = pow_rational(Rational(-4), n) / (Rational(factorial(2 * n + 1)) * (n + 1));
  return PiPowerMultiple{scale * diff, m};
}

template <class R>
R PiPowerMultiple::value() const {
  using std::pow;
  using std::sqrt;
  R c = coefficient.template convert_to<R>();
  return c * pow(pi<R>(), static_cast<int>(pi_power)) / sqrt(R(3));
}

template <class R>
PartialSum<R> l_series_partial(const PeriodicCharacter& chi, R s, std::uint64_t terms) {
  using std::pow;
  if (!(s > 1)) throw std::domain_error("l_series_partial: requires s > 1");
  if (terms == 0) throw std::invalid_argument("l_series_partial: terms must be positive");
  PartialSum<R> out;
  R abs_sum = 0;
  // Sum from the small end backwards so the large early terms are added last.
  for (std::uint64_t n = terms; n >= 1; --n) {
    int c = chi(static_cast<std::int64_t>(n));
    if (c == 0) continue;
    R t = pow(R(n), -s);
    out.value += c * t;
    abs_sum += t;
  }
  R N = R(terms);
  out.tail_bound = R(chi.modulus()) * pow(N, 1 - s) / (s - 1);
  // Each pow is correctly rounded to a few ulps; each addition adds one more.
  out.rounding_bound = (R(terms) + 8) * 2 * unit_roundoff<R>() * abs_sum;
  return out;
}

template double PiPowerMultiple::value<double>() const;
template Quad PiPowerMultiple::value<Quad>() const;
template PartialSum<double> l_series_partial(const PeriodicCharacter&, double, std::uint64_t);
template PartialSum<Quad> l_series_partial(const PeriodicCharacter&, Quad, std::uint64_t);

}  // namespace kz
