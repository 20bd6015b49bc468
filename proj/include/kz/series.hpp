#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace kz {

using Integer = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

Integer factorial(unsigned n);
Rational pow_rational(const Rational& base, unsigned e);
std::string to_string(const Rational& q);  // "num/den", or "num" when den == 1
Rational parse_rational(const std::string& s);

enum class SeriesVariable { inverse_x, p };

// Truncated power series with exact rational coefficients: coefficient n
// multiplies x^{-n} (inverse_x) or p^n (p).  order() is the number of
// stored coefficients.
class FormalSeries {
 public:
  FormalSeries(SeriesVariable var, std::size_t order);
  FormalSeries(SeriesVariable var, std::vector<Rational> coeffs);

  SeriesVariable variable() const noexcept { return var_; }
  std::size_t order() const noexcept { return c_.size(); }
  std::span<const Rational> coeffs() const noexcept { return c_; }

  const Rational& operator[](std::size_t n) const { return c_.at(n); }
  Rational& operator[](std::size_t n) { return c_.at(n); }

  FormalSeries truncated(std::size_t order) const;

  FormalSeries& operator+=(const FormalSeries& o);
  FormalSeries& operator-=(const FormalSeries& o);
  FormalSeries& operator*=(const Rational& s);

  friend FormalSeries operator+(FormalSeries a, const FormalSeries& b) { return a += b; }
  friend FormalSeries operator-(FormalSeries a, const FormalSeries& b) { return a -= b; }
  friend FormalSeries operator*(FormalSeries a, const Rational& s) { return a *= s; }
  // Cauchy product truncated to the shorter order.
  friend FormalSeries operator*(const FormalSeries& a, const FormalSeries& b);

  bool operator==(const FormalSeries& o) const { return var_ == o.var_ && c_ == o.c_; }

 private:
  SeriesVariable var_;
  std::vector<Rational> c_;
};

// B_n with B_1 = -1/2.  Memoized; safe to call from several threads.
Rational bernoulli_number(unsigned n);
Rational bernoulli_poly(unsigned n, const Rational& x);

// sum F_n x^{-n}  ->  sum F_{n+1} p^n / n!.  The constant F_0 is dropped and
// must be tracked separately by the caller.
FormalSeries borel_transform(const FormalSeries& f);

FormalSeries hadamard_product(const FormalSeries& f, const FormalSeries& g);

// Quotient N(u)/D(u) of two series in u = p^2, given by their u-coefficients.
// The result is a p-variable series whose coefficient m multiplies p^{2m}.
FormalSeries series_quotient_even(std::span<const Rational> num_sq,
                                  std::span<const Rational> den_sq,
                                  std::size_t order);

// u-coefficients (u = p^2) of cos(m p) and sin(m p)/p.
std::vector<Rational> cos_series_sq(const Rational& m, std::size_t order);
std::vector<Rational> sinc_series_sq(const Rational& m, std::size_t order);

// Truncated product of two coefficient lists.
std::vector<Rational> multiply_truncated(std::span<const Rational> a,
                                         std::span<const Rational> b,
                                         std::size_t order);

}  // namespace kz
