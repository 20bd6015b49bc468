#pragma once

#include "kz/real.hpp"
#include "kz/series.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace kz {

// (2n+3)! / ((n+1)! n!) / 4^n, by the ratio recurrence
Quad factorial_ratio_scaled(unsigned n);

// gamma_l in (2n+3)!/((n+1)! n!) ~ 4^n n^{3/2} sum_l gamma_l n^{-l}, fitted
// independently on two disjoint n windows.
struct StirlingFit {
  std::vector<Quad> gamma;        // from the high window
  std::vector<Quad> gamma_check;  // from the low window
  Quad max_disagreement{0};
};
StirlingFit stirling_gammas(unsigned l_max);

// b_n ~ base^n n^power sum_{k,l} c[k,l] n^{-l} k^{-2n}
struct TransseriesTable {
  std::map<std::pair<int, unsigned>, Quad> c;
  Quad base{0};
  Quad power{1.5};
  // the k-dependence enters as (k^2)^{-n}, not k^{-n}
  std::string k_convention = "k^{-2n}";
  Quad prefactor{0};  // c[k,l] = prefactor gamma_l chi(k) / k^4
  int k_max = 0;
  unsigned l_max = 0;
  StirlingFit fit;

  Quad reconstruct(unsigned n, const std::vector<int>& ks, unsigned l_trunc) const;
};

TransseriesTable extract_ckl(int k_max, unsigned l_max);

struct TransseriesReport {
  unsigned n_lo = 0, n_hi = 0;
  // per l-truncation L: fitted exponent e in |b_n - recon_L| / b_n ~ n^e
  std::vector<Quad> l_exponents;
  // max over n of |b_n - recon_L| / (b_n n^{-L})
  std::vector<Quad> l_scaled_max;
  // relative error with the full (k, l) window at n_hi
  Quad window_relative_error{0};
  // successive ratios of (b_n - exact k=1 block) / (k=1 block), n in [4, 14]
  std::vector<Quad> k_block_ratios;
};

TransseriesReport verify_transseries(const TransseriesTable& table, unsigned n_lo, unsigned n_hi);

// b_n = prefactor * bernoulli_difference with the pieces kept
struct ExactBn {
  Rational value;
  Rational prefactor;             // 6 (-6)^{n+1} / ((n+2)! n!)
  Rational bernoulli_difference;  // B_{2n+4}(1/12) - B_{2n+4}(5/12)
};
ExactBn exact_bn(unsigned n);

}  // namespace kz
