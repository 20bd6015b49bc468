#pragma once

#include "kz/kz_invariants.hpp"
#include "kz/real.hpp"
#include "kz/resurgent_borel.hpp"
#include "kz/richardson.hpp"

#include <string>
#include <vector>

namespace kz {

// mur: boundary values from above the positive real axis, mul: from below,
// med: their mean.
enum class AverageKind { mur, mul, med };

enum class Route {
  erfi_series,
  eta_integral,
  per_singularity_closed_form,
  borel_ray_quadrature,
  lateral_mean,    // (mul + mur) / 2
  mul_plus_delta,  // mul + delta
};

std::string to_string(AverageKind a);
std::string to_string(Route r);
AverageKind parse_average(const std::string& s);  // throws std::invalid_argument

template <class R>
struct RouteValue {
  Route route;
  Complex<R> value;
  R err_estimate;
};

template <class R>
struct SummationResult {
  Complex<R> value{};
  R err_estimate{0};
  Route route = Route::per_singularity_closed_form;
  AverageKind kind = AverageKind::med;
  Complex<R> x{};
  std::int64_t terms = 0;
  std::vector<RouteValue<R>> cross;  // filled when cross-checking
  R discrepancy{0};                   // max cross-route disagreement
};

// Boundary value of the averaged function at real p >= 0.
template <class R>
Estimate<R> averaged_value(const SqrtBranched<R>& g, AverageKind avg, R p, R tol);

// M_k(y) - sum_{j<J} (k/2)_j y^{-j-1}, where M_k(y) = int_med e^{-yq} (1-q)^{-k/2} dq.
template <class R>
Complex<R> median_kernel(int k, const Complex<R>& y, unsigned J = 0);

// Median sum a0 + sum_eta c_eta eta^{1-k/2} M_k(eta x), odd k >= 3.
template <class R>
SummationResult<R> sum_closed_form(const SqrtBranched<R>& g, const Complex<R>& x, R tol);

// The weight-5 specialization written with E(sqrt(eta x)).
template <class R>
SummationResult<R> sum_erfi(const SqrtBranched<R>& g, const Complex<R>& x, R tol);

// delta(x) = (S^mur - S^mul)/2 as an exponential sum.
template <class R>
Estimate<R> dirichlet_delta(const SqrtBranched<R>& g, const Complex<R>& x, R tol);

// Trefoil laterals as sqrt(3) int eta(2 pi i z) (1 - z/x)^{-3/2} dz along the
// ray at angle arg x + eps (mur) or arg x - eps (mul). eps is halved while the
// ray leaves the right half plane.
template <class R>
SummationResult<R> sum_eta_integral(AverageKind which, const Complex<R>& x, R eps, R tol);

// Laterals as a0 + int e^{-xp} G(p) dp along a ray just above (mur) or
// below (mul) the positive axis. Practical in double precision.
template <class R>
SummationResult<R> sum_lateral_ray(const SqrtBranched<R>& g, AverageKind which,
                                   const Complex<R>& x, R tol);

// Laterals from the median: S^mul = S^med - delta, S^mur = S^med + delta.
template <class R>
SummationResult<R> sum_lateral(const SqrtBranched<R>& g, AverageKind which,
                               const Complex<R>& x, R tol);

// Median sum by the closed form; with cross_check the other routes are run
// and their largest disagreement is added to err_estimate.
template <class R>
SummationResult<R> sum_median(const SqrtBranched<R>& g, const Complex<R>& x, R tol,
                              bool cross_check = false);

// eps0 = 1/(960 a^2), a = |numerator of alpha|, ratio 2, 6 rungs.
template <class R>
LadderSpec<R> default_radial_ladder(const RationalAngle& alpha);

// S^med at eps_j + i/(2 pi alpha), extrapolated to eps -> 0.
template <class R>
LadderResult<R> radial_limit(const SqrtBranched<R>& g, const RationalAngle& alpha,
                             const LadderSpec<R>& ladder, R tol);

}  // namespace kz
