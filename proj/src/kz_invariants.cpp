#include "kz/kz_invariants.hpp"

#include <cmath>
#include <stdexcept>

namespace kz {

std::string to_string(KnotObject k) {
  return k == KnotObject::trefoil ? "trefoil" : "poincare";
}

std::string to_string(CoefficientRoute r) {
  return r == CoefficientRoute::generating_function ? "generating-function"
                                                    : "bernoulli-closed-form";
}

unsigned RationalAngle::order() const {
  Integer den = boost::multiprecision::denominator(alpha);
  if (den > 1000000) throw std::domain_error("root of unity order too large");
  return den.convert_to<unsigned>();
}

Rational CoefficientTable::scaled(std::size_t n) const {
  if (which == KnotObject::trefoil) return a.at(n) / pow_rational(Rational(24), n);
  return a.at(n) / (Rational(factorial(n)) * pow_rational(Rational(120), n));
}

FormalSeries CoefficientTable::f_series() const {
  std::vector<Rational> c(a.size());
  for (std::size_t n = 0; n < a.size(); ++n) c[n] = scaled(n);
  return FormalSeries(SeriesVariable::inverse_x, std::move(c));
}

CoefficientTable trefoil_coeffs(std::size_t order, CoefficientRoute route) {
  if (order < 1) throw std::invalid_argument("trefoil_coeffs: order must be >= 1");
  CoefficientTable t{KnotObject::trefoil, route, std::vector<Rational>(order)};
  if (route == CoefficientRoute::generating_function) {
    // sum a_n n!/(2n+1)! p^{2n+1} = sin 2p / (2 cos 3p); divide out one p.
    auto num = sinc_series_sq(Rational(2), order);
    auto den = cos_series_sq(Rational(3), order);
    for (auto& d : den) d *= 2;
    FormalSeries q = series_quotient_even(num, den, order);
    for (std::size_t n = 0; n < order; ++n)
      t.a[n] = q[n] * Rational(factorial(2 * n + 1)) / Rational(factorial(n));
  } else {
    // a_n/24^n = 6 (-6)^n/(n+1)! (B_{2n+2}(1/12) - B_{2n+2}(5/12))
    for (std::size_t n = 0; n < order; ++n) {
      unsigned m = static_cast<unsigned>(2 * n + 2);
      Rational d = bernoulli_poly(m, Rational(1, 12)) - bernoulli_poly(m, Rational(5, 12));
      Rational s = 6 * pow_rational(Rational(-6), n) / Rational(factorial(n + 1)) * d;
      t.a[n] = s * pow_rational(Rational(24), n);
    }
  }
  return t;
}

CoefficientTable poincare_coeffs(std::size_t order) {
  if (order < 1) throw std::invalid_argument("poincare_coeffs: order must be >= 1");
  auto num = multiply_truncated(cos_series_sq(Rational(5), order),
                                cos_series_sq(Rational(9), order), order);
  auto den = cos_series_sq(Rational(15), order);
  FormalSeries q = series_quotient_even(num, den, order);
  CoefficientTable t{KnotObject::poincare, CoefficientRoute::generating_function,
                     std::vector<Rational>(order)};
  for (std::size_t n = 0; n < order; ++n) t.a[n] = q[n] * Rational(factorial(2 * n));
  return t;
}

Rational trefoil_borel_taylor(unsigned n) {
  // b_n = 6 (-6)^{n+1}/((n+2)! n!) (B_{2n+4}(1/12) - B_{2n+4}(5/12))
  unsigned m = 2 * n + 4;
  Rational d = bernoulli_poly(m, Rational(1, 12)) - bernoulli_poly(m, Rational(5, 12));
  return 6 * pow_rational(Rational(-6), n + 1) /
         (Rational(factorial(n + 2)) * Rational(factorial(n))) * d;
}

template <class R>
Complex<R> q_factorial(const Complex<R>& q, unsigned n) {
  Complex<R> r(1), qk(1);
  for (unsigned k = 1; k <= n; ++k) {
    qk *= q;
    r *= Complex<R>(1) - qk;
  }
  return r;
}

template <class R>
Complex<R> root_of_unity(const Rational& alpha) {
  using std::cos;
  using std::sin;
  Integer num = boost::multiprecision::numerator(alpha);
  Integer den = boost::multiprecision::denominator(alpha);
  Integer r = num % den;
  if (r < 0) r += den;
  // fold into [-1/2, 1/2] turns so the rounded angle stays small
  if (2 * r > den) r -= den;
  R t = 2 * pi<R>() * (Rational(r, den)).template convert_to<R>();
  return Complex<R>(cos(t), sin(t));
}

namespace {

constexpr unsigned kExactOrderLimit = 12;

// Elements of Z[q]/(Phi_d(q)), q a primitive d-th root of unity,
// stored as integer coefficient vectors of degree < phi(d).
class Cyclotomic {
 public:
  explicit Cyclotomic(unsigned d) : d_(d), phi_(cyclotomic_poly(d)) {}

  using Poly = std::vector<Integer>;

  Poly one() const { return Poly{1}; }

  // p * (1 - q^k), reduced
  Poly times_one_minus_qk(const Poly& p, unsigned k) const {
    Poly r(p.size() + k, 0);
    for (std::size_t i = 0; i < p.size(); ++i) {
      r[i] += p[i];
      r[i + k] -= p[i];
    }
    return reduce(std::move(r));
  }

  static bool is_zero(const Poly& p) {
    for (auto& c : p)
      if (c != 0) return false;
    return true;
  }

  void add(Poly& acc, const Poly& p) const {
    if (acc.size() < p.size()) acc.resize(p.size(), 0);
    for (std::size_t i = 0; i < p.size(); ++i) acc[i] += p[i];
  }

  template <class R>
  Complex<R> evaluate(const Poly& p, const Rational& alpha) const {
    Complex<R> s(0);
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (p[i] == 0) continue;
      s += p[i].template convert_to<R>() * root_of_unity<R>(alpha * Integer(i));
    }
    return s;
  }

 private:
  unsigned d_;
  Poly phi_;

  // Phi_d = (x^d - 1) / prod_{e | d, e < d} Phi_e
  static Poly cyclotomic_poly(unsigned d) {
    Poly p(d + 1, 0);
    p[0] = -1;
    p[d] = 1;
    for (unsigned e = 1; e < d; ++e) {
      if (d % e) continue;
      Poly f = cyclotomic_poly(e);
      // exact division by the monic f
      Poly q(p.size() - f.size() + 1, 0);
      for (std::size_t i = q.size(); i-- > 0;) {
        q[i] = p[i + f.size() - 1];
        for (std::size_t j = 0; j < f.size(); ++j) p[i + j] -= q[i] * f[j];
      }
      p = q;
    }
    return p;
  }

  Poly reduce(Poly r) const {
    std::size_t deg = phi_.size() - 1;
    for (std::size_t i = r.size(); i-- > deg;) {
      Integer c = r[i];
      if (c == 0) continue;
      for (std::size_t j = 0; j <= deg; ++j) r[i - deg + j] -= c * phi_[j];
    }
    r.resize(std::min(r.size(), deg));
    return r;
  }
};

}  // namespace

template <class R>
Complex<R> q_factorial_at(const RationalAngle& q, unsigned n) {
  unsigned d = q.order();
  if (d <= kExactOrderLimit) {
    Cyclotomic ring(d);
    auto p = ring.one();
    for (unsigned k = 1; k <= n; ++k) {
      p = ring.times_one_minus_qk(p, k);
      if (Cyclotomic::is_zero(p)) return Complex<R>(0);
    }
    return ring.evaluate<R>(p, q.alpha);
  }
  Complex<R> r(1);
  R threshold = 10 * unit_roundoff<R>();
  for (unsigned k = 1; k <= n; ++k) {
    Complex<R> f = Complex<R>(1) - root_of_unity<R>(q.alpha * Integer(k));
    if (std::abs(f) <= threshold) return Complex<R>(0);
    r *= f;
  }
  return r;
}

template <class R>
Complex<R> f_at_root_of_unity(const RationalAngle& alpha) {
  unsigned d = alpha.order();
  if (d <= kExactOrderLimit) {
    Cyclotomic ring(d);
    auto term = ring.one();
    auto acc = ring.one();
    for (unsigned k = 1;; ++k) {
      term = ring.times_one_minus_qk(term, k);
      if (Cyclotomic::is_zero(term)) break;
      ring.add(acc, term);
    }
    return ring.evaluate<R>(acc, alpha.alpha);
  }
  Complex<R> term(1), acc(1);
  R threshold = 10 * unit_roundoff<R>();
  for (unsigned k = 1;; ++k) {
    Complex<R> f = Complex<R>(1) - root_of_unity<R>(alpha.alpha * Integer(k));
    if (std::abs(f) <= threshold) break;
    term *= f;
    acc += term;
  }
  return acc;
}

template <class R>
Complex<R> phi(const RationalAngle& alpha) {
  return root_of_unity<R>(alpha.alpha / 24) * f_at_root_of_unity<R>(alpha);
}

#define KZ_INSTANTIATE(R)                                                        \
  template Complex<R> q_factorial(const Complex<R>&, unsigned);                  \
  template Complex<R> q_factorial_at(const RationalAngle&, unsigned);            \
  template Complex<R> f_at_root_of_unity(const RationalAngle&);                  \
  template Complex<R> phi(const RationalAngle&);                                 \
  template Complex<R> root_of_unity(const Rational&);

KZ_INSTANTIATE(double)
KZ_INSTANTIATE(Quad)
#undef KZ_INSTANTIATE

}  // namespace kz
