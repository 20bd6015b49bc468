#include "kz/transseries.hpp"

#include "kz/characters.hpp"
#include "kz/kz_invariants.hpp"
#include "kz/resurgent_borel.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <cmath>
#include <stdexcept>

namespace kz {

namespace {

using std::abs;
using std::log;
using std::pow;
using std::sqrt;

// The fit differentiates data to sixth order in 1/n over narrow windows; it
// runs at 100 digits so rounding in the data stays far below the target.
using Wide = boost::multiprecision::cpp_bin_float_100;

// monomial coefficients of the polynomial through (t_i, f_i)
std::vector<Wide> interpolate(const std::vector<Wide>& t, std::vector<Wide> f) {
  const std::size_t m = t.size();
  for (std::size_t j = 1; j < m; ++j)
    for (std::size_t i = m - 1; i >= j; --i) f[i] = (f[i] - f[i - 1]) / (t[i] - t[i - j]);
  // Newton form to monomials
  std::vector<Wide> c(m, Wide(0));
  for (std::size_t j = m; j-- > 0;) {
    for (std::size_t i = m - 1; i > 0; --i) c[i] = c[i - 1] - t[j] * c[i];
    c[0] = -t[j] * c[0] + f[j];
  }
  return c;
}

Wide ratio_scaled_wide(unsigned n) {
  Wide q = 6;
  for (unsigned m = 0; m < n; ++m) q *= Wide(2 * m + 5) / Wide(2 * (m + 1));
  return q;
}

std::vector<Wide> fit_window(unsigned lo, unsigned hi, unsigned nodes) {
  std::vector<Wide> t, f;
  const double a = 1.0 / hi, b = 1.0 / lo;
  for (unsigned i = 0; i < nodes; ++i) {
    // Chebyshev spacing in 1/n
    double x = (a + b) / 2 + (b - a) / 2 * std::cos(M_PI * (2 * i + 1) / (2.0 * nodes));
    unsigned n = static_cast<unsigned>(std::lround(1 / x));
    if (!t.empty() && Wide(1) / Wide(n) == t.back()) continue;
    t.push_back(Wide(1) / Wide(n));
    Wide wn(n);
    f.push_back(ratio_scaled_wide(n) / (wn * sqrt(wn)));
  }
  return interpolate(t, f);
}

}  // namespace

namespace {

Quad k_one_block(unsigned n, Quad prefactor) {
  return prefactor * pow(3 / (2 * pi<Quad>() * pi<Quad>()), Quad(n)) * pow(Quad(4), Quad(n)) *
         factorial_ratio_scaled(n);
}

}  // namespace

Quad factorial_ratio_scaled(unsigned n) {
  Quad q = 6;
  for (unsigned m = 0; m < n; ++m) q *= Quad(2 * m + 5) / Quad(2 * (m + 1));
  return q;
}

StirlingFit stirling_gammas(unsigned l_max) {
  const unsigned nodes = 18;
  if (l_max + 1 > nodes) throw std::invalid_argument("stirling_gammas: l_max too large");
  auto hi = fit_window(1000, 2400, nodes);
  auto lo = fit_window(200, 900, nodes);
  StirlingFit s;
  for (unsigned l = 0; l <= l_max; ++l) {
    s.gamma.push_back(Quad(hi[l].str(40)));
    s.gamma_check.push_back(Quad(lo[l].str(40)));
    Quad d = s.gamma[l] - s.gamma_check[l];
    if (d < 0) d = -d;
    if (d > s.max_disagreement) s.max_disagreement = d;
  }
  return s;
}

Quad TransseriesTable::reconstruct(unsigned n, const std::vector<int>& ks, unsigned l_trunc) const {
  Quad nn = Quad(n), sum = 0;
  for (int k : ks) {
    Quad kk = pow(Quad(k), Quad(-2 * static_cast<int>(n)));
    for (unsigned l = 0; l <= l_trunc && l <= l_max; ++l) {
      auto it = c.find({k, l});
      if (it == c.end()) continue;
      sum += it->second * pow(nn, -Quad(l)) * kk;
    }
  }
  return pow(base, nn) * pow(nn, power) * sum;
}

TransseriesTable extract_ckl(int k_max, unsigned l_max) {
  if (k_max < 1 || l_max < 1) throw std::invalid_argument("extract_ckl: needs k_max, l_max >= 1");
  TransseriesTable t;
  t.k_max = k_max;
  t.l_max = l_max;
  t.base = 6 / (pi<Quad>() * pi<Quad>());
  t.prefactor = 9 * sqrt(Quad(3)) / pow(pi<Quad>(), Quad(4));
  t.fit = stirling_gammas(l_max + 1);
  for (int k = 1; k <= k_max; ++k) {
    int ch = chi12(k);
    for (unsigned l = 0; l <= l_max; ++l)
      t.c[{k, l}] = ch == 0 ? Quad(0) : t.prefactor * t.fit.gamma[l] * Quad(ch) / pow(Quad(k), Quad(4));
  }
  return t;
}

TransseriesReport verify_transseries(const TransseriesTable& table, unsigned n_lo, unsigned n_hi) {
  if (n_lo < 2 || n_hi <= n_lo) throw std::invalid_argument("verify_transseries: bad n range");
  TransseriesReport r;
  r.n_lo = n_lo;
  r.n_hi = n_hi;
  std::vector<Quad> b(n_hi + 1);
  for (unsigned n = 0; n <= n_hi; ++n) b[n] = trefoil_borel_taylor(n).convert_to<Quad>();
  const std::vector<int> k1{1};
  for (unsigned L = 0; L <= table.l_max; ++L) {
    Quad worst = 0;
    for (unsigned n = n_lo; n <= n_hi; ++n) {
      Quad rel = abs(b[n] - table.reconstruct(n, k1, L)) / b[n];
      Quad s = rel * pow(Quad(n), Quad(L + 1));
      if (s > worst) worst = s;
    }
    Quad e_lo = abs(b[n_lo] - table.reconstruct(n_lo, k1, L)) / b[n_lo];
    Quad e_hi = abs(b[n_hi] - table.reconstruct(n_hi, k1, L)) / b[n_hi];
    r.l_exponents.push_back(log(e_hi / e_lo) / log(Quad(n_hi) / Quad(n_lo)));
    r.l_scaled_max.push_back(worst);
  }
  std::vector<int> window;
  for (int k = 1; k <= table.k_max; ++k)
    if (chi12(k) != 0) window.push_back(k);
  r.window_relative_error = abs(b[n_hi] - table.reconstruct(n_hi, window, table.l_max)) / b[n_hi];
  Quad prev = 0;
  for (unsigned n = 4; n <= 14; ++n) {
    Quad blk = k_one_block(n, table.prefactor);
    Quad rest = (trefoil_borel_taylor(n).convert_to<Quad>() - blk) / blk;
    if (n > 4) r.k_block_ratios.push_back(rest / prev);
    prev = rest;
  }
  return r;
}

ExactBn exact_bn(unsigned n) {
  ExactBn e;
  e.prefactor = Rational(6) * pow_rational(Rational(-6), n + 1) /
                Rational(factorial(n + 2) * factorial(n));
  e.bernoulli_difference =
      bernoulli_poly(2 * n + 4, Rational(1, 12)) - bernoulli_poly(2 * n + 4, Rational(5, 12));
  e.value = e.prefactor * e.bernoulli_difference;
  return e;
}

}  // namespace kz
