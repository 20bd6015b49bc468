#pragma once

#include "kz/characters.hpp"
#include "kz/real.hpp"
#include "kz/series.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace kz {

// One term c (eta - p)^{-k/2}.
template <class R>
struct Singularity {
  R eta{0};
  R c{0};
  int k = 1;
};

// c_n = amplitude * psi(n) * n^gamma with psi periodic of mean zero.
template <class R>
struct TailLaw {
  R amplitude{0};
  R gamma{0};
  R psi_max{0};          // max |psi(n)|
  R psi_partial_max{0};  // max_N |sum_{n<=N} psi(n)|
};

// A square-root-branched function sum_eta c_eta (eta - p)^{-k/2}: either a
// finite list or the lattice eta_n = scale n^2, n >= 1, with coefficients
// from a periodic law.
template <class R>
class SqrtBranched {
 public:
  using Coefficient = std::function<R(std::int64_t)>;
  using ExactTaylor = std::function<Rational(unsigned)>;

  static SqrtBranched finite(std::vector<Singularity<R>> sings, std::string name = "custom");
  static SqrtBranched lattice(std::string name, int weight, R scale, Coefficient coeff,
                              TailLaw<R> law);

  const std::string& name() const noexcept { return name_; }
  bool is_lattice() const noexcept { return lattice_; }
  // common weight k, or 0 when weights differ
  int weight() const noexcept { return weight_; }
  // number of terms; lattice instances report the term budget
  std::int64_t size() const noexcept;
  // index is 1-based
  Singularity<R> term(std::int64_t index) const;
  R first_singularity() const;
  const TailLaw<R>& tail_law() const noexcept { return law_; }
  R scale() const noexcept { return scale_; }

  // constant term a_0 of the formal series this function is the Borel transform of
  Rational a0 = 0;
  // exact Taylor coefficients b_j at p = 0, when known
  ExactTaylor exact_taylor;

  // Bound on |sum_{n > N} c_n (eta_n - p)^{-k/2 - j}|, valid when
  // |p| <= eta_{N+1}/2; infinite otherwise.
  R tail_bound(std::int64_t N, R abs_p, unsigned j = 0) const;

  static constexpr std::int64_t kTermBudget = 100000;

 private:
  std::string name_;
  bool lattice_ = false;
  int weight_ = 0;
  R scale_{0};
  Coefficient coeff_;
  TailLaw<R> law_;
  std::vector<Singularity<R>> sings_;
};

template <class R>
SqrtBranched<R> trefoil_borel();
template <class R>
SqrtBranched<R> poincare_borel();
// The appendix formula taken literally; differs from poincare_borel by the
// factor poincare_printed_factor().
template <class R>
SqrtBranched<R> poincare_borel_printed();
Rational poincare_printed_factor();  // -900

template <class R>
R poincare_c1();
template <class R>
R poincare_c2();

enum class Sheet { principal, second };

template <class R>
struct SheetedPoint {
  Complex<R> p;
  Sheet sheet = Sheet::principal;
};

// Principal branch of (eta-p)^{-k/2}; the second sheet flips every
// square-root factor, i.e. negates the sum.
template <class R>
Estimate<R> eval(const SqrtBranched<R>& g, const SheetedPoint<R>& pt, R tol);

template <class R>
struct TaylorCoefficients {
  std::vector<Estimate<R>> numeric;           // value (real part) and bound
  std::optional<std::vector<Rational>> exact;  // when the instance knows them
};

template <class R>
TaylorCoefficients<R> taylor_coeffs(const SqrtBranched<R>& g, unsigned order, R tol);

// Trefoil b_n from the Bernoulli closed form.
std::vector<Rational> trefoil_taylor_exact(unsigned order);

}  // namespace kz
