#include "kz/resurgent_borel.hpp"

#include "kz/kz_invariants.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace kz {

template <class R>
SqrtBranched<R> SqrtBranched<R>::finite(std::vector<Singularity<R>> sings, std::string name) {
  SqrtBranched g;
  g.name_ = std::move(name);
  for (std::size_t i = 0; i < sings.size(); ++i) {
    if (!(sings[i].eta > 0)) throw std::invalid_argument("singularity must be positive");
    if (sings[i].k <= 0 || sings[i].k % 2 == 0)
      throw std::invalid_argument("weight numerator must be odd and positive");
    if (i > 0 && !(sings[i].eta > sings[i - 1].eta))
      throw std::invalid_argument("singularities must be strictly increasing");
  }
  g.weight_ = sings.empty() ? 0 : sings[0].k;
  for (auto& s : sings)
    if (s.k != g.weight_) g.weight_ = 0;
  g.sings_ = std::move(sings);
  return g;
}

template <class R>
SqrtBranched<R> SqrtBranched<R>::lattice(std::string name, int weight, R scale,
                                         Coefficient coeff, TailLaw<R> law) {
  if (weight <= 0 || weight % 2 == 0) throw std::invalid_argument("weight must be odd");
  if (!(law.gamma < weight - 1)) throw std::invalid_argument("coefficients grow too fast");
  SqrtBranched g;
  g.name_ = std::move(name);
  g.lattice_ = true;
  g.weight_ = weight;
  g.scale_ = scale;
  g.coeff_ = std::move(coeff);
  g.law_ = law;
  return g;
}

template <class R>
std::int64_t SqrtBranched<R>::size() const noexcept {
  return lattice_ ? kTermBudget : static_cast<std::int64_t>(sings_.size());
}

template <class R>
Singularity<R> SqrtBranched<R>::term(std::int64_t index) const {
  if (index < 1) throw std::out_of_range("singularity index is 1-based");
  if (!lattice_) return sings_.at(static_cast<std::size_t>(index - 1));
  R n = R(index);
  return Singularity<R>{scale_ * n * n, coeff_(index), weight_};
}

template <class R>
R SqrtBranched<R>::first_singularity() const {
  for (std::int64_t i = 1; i <= size(); ++i) {
    auto t = term(i);
    if (t.c != 0) return t.eta;
  }
  return std::numeric_limits<R>::infinity();
}

template <class R>
R SqrtBranched<R>::tail_bound(std::int64_t N, R abs_p, unsigned j) const {
  using std::abs;
  using std::pow;
  const R inf = std::numeric_limits<R>::infinity();
  if (!lattice_) {
    R s = 0;
    for (std::int64_t i = N + 1; i <= size(); ++i) {
      auto t = term(i);
      if (!(abs_p <= t.eta / 2)) return inf;
      s += abs(t.c) * pow(t.eta / 2, -R(t.k) / 2 - R(j));
    }
    return s;
  }
  R t0 = R(N + 1);
  R kappa = 1 - abs_p / (scale_ * t0 * t0);
  if (!(kappa >= R(0.5))) return inf;
  R kk = R(weight_) + 2 * R(j);
  R g = law_.gamma;
  R head = law_.amplitude * pow(scale_ * kappa, -kk / 2) * pow(t0, g - kk);
  // summation by parts against the bounded partial sums of psi
  R abel = law_.psi_partial_max * head * (1 + (abs(g) + kk / kappa) / (kk - g));
  R direct = inf;
  if (kk - g > 1) direct = law_.psi_max * head * (1 + t0 / (kk - g - 1));
  return std::min(abel, direct);
}

namespace {

template <class R>
R trefoil_amplitude() {
  using std::sqrt;
  return 3 * pi<R>() / (2 * sqrt(R(2)));
}

}  // namespace

template <class R>
R poincare_c1() {
  using std::sqrt;
  return sqrt(6 * (5 + sqrt(R(5)))) / 120;
}

template <class R>
R poincare_c2() {
  using std::sqrt;
  return sqrt(6 * (5 - sqrt(R(5)))) / 120;
}

Rational poincare_printed_factor() { return Rational(-900); }

std::vector<Rational> trefoil_taylor_exact(unsigned order) {
  std::vector<Rational> b(order);
  for (unsigned j = 0; j < order; ++j) b[j] = trefoil_borel_taylor(j);
  return b;
}

template <class R>
SqrtBranched<R> trefoil_borel() {
  const R amp = trefoil_amplitude<R>();
  const auto& chi = PeriodicCharacter::chi12();
  TailLaw<R> law{amp, R(1), R(1), R(chi.partial_sum_bound())};
  auto g = SqrtBranched<R>::lattice(
      "trefoil", 5, pi<R>() * pi<R>() / 6,
      [amp](std::int64_t n) { return amp * R(chi12(n)) * R(n); }, law);
  g.a0 = 1;
  g.exact_taylor = [](unsigned j) { return trefoil_borel_taylor(j); };
  return g;
}

namespace {

template <class R>
SqrtBranched<R> poincare_instance(std::string name, R amplitude) {
  const R c1 = poincare_c1<R>(), c2 = poincare_c2<R>();
  const auto& x1 = PeriodicCharacter::chi60_1();
  const auto& x2 = PeriodicCharacter::chi60_2();
  R partial = 0, run = 0;
  for (int n = 1; n <= 60; ++n) {
    run += c1 * R(x1(n)) + c2 * R(x2(n));
    partial = std::max<R>(partial, run < 0 ? R(-run) : run);
  }
  R amp_abs = amplitude < 0 ? R(-amplitude) : amplitude;
  TailLaw<R> law{amp_abs, R(0), c1 > c2 ? c1 : c2, partial};
  return SqrtBranched<R>::lattice(
      std::move(name), 3, pi<R>() * pi<R>() / 30,
      [=](std::int64_t n) { return amplitude * (c1 * R(chi60(1, n)) + c2 * R(chi60(2, n))); },
      law);
}

}  // namespace

template <class R>
SqrtBranched<R> poincare_borel() {
  using std::sqrt;
  // -900 * 30^{-3/2} = -sqrt(30)
  auto g = poincare_instance<R>("poincare", -sqrt(R(30)));
  g.a0 = 1;
  g.exact_taylor = [](unsigned j) {
    auto t = poincare_coeffs(j + 2);
    return t.scaled(j + 1) / Rational(factorial(j));
  };
  return g;
}

template <class R>
SqrtBranched<R> poincare_borel_printed() {
  using std::pow;
  auto g = poincare_instance<R>("poincare-printed", pow(R(30), R(-1.5)));
  g.a0 = 1;
  return g;
}

namespace {

template <class R>
void reject_on_cut(const SqrtBranched<R>& g, const Complex<R>& p, std::int64_t N) {
  if (p.imag() != 0) return;
  for (std::int64_t i = 1; i <= N; ++i) {
    auto t = g.term(i);
    if (t.eta > p.real()) return;
    if (t.c != 0) throw std::domain_error("eval: point lies on a branch cut");
  }
}

// smallest N with tail_bound(N) <= target, or -1 past the budget
template <class R>
std::int64_t choose_terms(const SqrtBranched<R>& g, R abs_p, unsigned j, R target) {
  if (!g.is_lattice()) return g.size();
  const std::int64_t budget = SqrtBranched<R>::kTermBudget;
  std::int64_t hi = 1;
  while (!(g.tail_bound(hi, abs_p, j) <= target)) {
    if (hi >= budget) return -1;
    hi = std::min(budget, hi * 2);
  }
  std::int64_t lo = hi / 2;
  while (hi - lo > 1) {
    std::int64_t mid = (lo + hi) / 2;
    if (g.tail_bound(mid, abs_p, j) <= target)
      hi = mid;
    else
      lo = mid;
  }
  return hi;
}

}  // namespace

template <class R>
Estimate<R> eval(const SqrtBranched<R>& g, const SheetedPoint<R>& pt, R tol) {
  using std::abs;
  if (!(tol > 0)) throw std::invalid_argument("eval: tol must be positive");
  R ap = abs(pt.p);
  std::int64_t N = choose_terms(g, ap, 0, tol / 2);
  if (N < 0) throw NonConvergence("eval: tolerance unreachable within the term budget");
  reject_on_cut(g, pt.p, N);
  Complex<R> sum(0);
  R mag = 0;
  for (std::int64_t i = 1; i <= N; ++i) {
    auto t = g.term(i);
    if (t.c == 0) continue;
    Complex<R> d = Complex<R>(t.eta) - pt.p;
    if (d == Complex<R>(0)) throw std::domain_error("eval: point is a singularity");
    Complex<R> s = std::sqrt(d);
    Complex<R> v = t.c / std::pow(s, t.k);
    sum += v;
    mag += abs(v);
  }
  if (pt.sheet == Sheet::second) sum = -sum;
  R err = g.tail_bound(N, ap, 0) + R(4 * (N + 2)) * unit_roundoff<R>() * mag;
  return Estimate<R>{sum, err};
}

template <class R>
TaylorCoefficients<R> taylor_coeffs(const SqrtBranched<R>& g, unsigned order, R tol) {
  using std::abs;
  using std::pow;
  if (order < 1) throw std::invalid_argument("taylor_coeffs: order must be >= 1");
  TaylorCoefficients<R> out;
  for (unsigned j = 0; j < order; ++j) {
    R lattice_factor = 1;
    for (unsigned m = 0; m < j; ++m) lattice_factor *= (R(g.weight()) / 2 + R(m)) / R(m + 1);
    std::int64_t N = choose_terms(g, R(0), j, tol / (2 * lattice_factor));
    if (N < 0) throw NonConvergence("taylor_coeffs: tolerance unreachable within the term budget");
    R sum = 0, mag = 0, tail_factor = 0;
    for (std::int64_t i = 1; i <= N; ++i) {
      auto t = g.term(i);
      if (t.c == 0) continue;
      // binomial factor (k/2)_j / j!
      R f = 1;
      for (unsigned m = 0; m < j; ++m) f *= (R(t.k) / 2 + R(m)) / R(m + 1);
      tail_factor = std::max(tail_factor, f);
      R v = t.c * f * pow(t.eta, -R(t.k) / 2 - R(j));
      sum += v;
      mag += abs(v);
    }
    if (g.is_lattice()) tail_factor = lattice_factor;
    R err = tail_factor * g.tail_bound(N, R(0), j) + R(4 * (N + 2)) * unit_roundoff<R>() * mag;
    out.numeric.push_back(Estimate<R>{Complex<R>(sum), err});
  }
  if (g.exact_taylor) {
    std::vector<Rational> e(order);
    for (unsigned j = 0; j < order; ++j) e[j] = g.exact_taylor(j);
    out.exact = std::move(e);
  }
  return out;
}

#define KZ_INSTANTIATE(R)                                                           \
  template class SqrtBranched<R>;                                                   \
  template SqrtBranched<R> trefoil_borel<R>();                                      \
  template SqrtBranched<R> poincare_borel<R>();                                     \
  template SqrtBranched<R> poincare_borel_printed<R>();                             \
  template R poincare_c1<R>();                                                      \
  template R poincare_c2<R>();                                                      \
  template Estimate<R> eval(const SqrtBranched<R>&, const SheetedPoint<R>&, R);     \
  template TaylorCoefficients<R> taylor_coeffs(const SqrtBranched<R>&, unsigned, R);

KZ_INSTANTIATE(double)
KZ_INSTANTIATE(Quad)
#undef KZ_INSTANTIATE

}  // namespace kz
