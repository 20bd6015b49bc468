#pragma once

#include "kz/real.hpp"
#include "kz/series.hpp"

#include <cstddef>
#include <vector>

namespace kz {

enum class KnotObject { trefoil, poincare };
enum class CoefficientRoute { generating_function, bernoulli_closed_form };

std::string to_string(KnotObject k);
std::string to_string(CoefficientRoute r);

// q = exp(2 pi i alpha) with alpha rational.
struct RationalAngle {
  Rational alpha;
  // order of q as a root of unity: the reduced denominator of alpha
  unsigned order() const;
};

struct CoefficientTable {
  KnotObject which = KnotObject::trefoil;
  CoefficientRoute route = CoefficientRoute::generating_function;
  std::vector<Rational> a;

  std::size_t order() const { return a.size(); }
  // Coefficient of x^{-n} in the formal series:
  // a_n / 24^n (trefoil) or a_n / (n! 120^n) (Poincare sphere).
  Rational scaled(std::size_t n) const;
  FormalSeries f_series() const;
};

CoefficientTable trefoil_coeffs(std::size_t order,
                                CoefficientRoute route = CoefficientRoute::generating_function);
CoefficientTable poincare_coeffs(std::size_t order);

// Coefficient b_n of G(p) = sum b_n p^n, the Borel transform of the trefoil
// series, from the Bernoulli closed form.
Rational trefoil_borel_taylor(unsigned n);

template <class R>
Complex<R> q_factorial(const Complex<R>& q, unsigned n);

// (q)_n at q = exp(2 pi i alpha), exact cyclotomic arithmetic when the
// order of q is at most 12.
template <class R>
Complex<R> q_factorial_at(const RationalAngle& q, unsigned n);

template <class R>
Complex<R> f_at_root_of_unity(const RationalAngle& alpha);

template <class R>
Complex<R> phi(const RationalAngle& alpha);

// exp(2 pi i alpha) with alpha reduced mod 1 before rounding
template <class R>
Complex<R> root_of_unity(const Rational& alpha);

}  // namespace kz
