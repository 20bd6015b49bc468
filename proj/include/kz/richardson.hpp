#pragma once

#include "kz/real.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace kz {

template <class R>
struct RichardsonResult {
  Complex<R> value{};
  R error{0};                       // |last diagonal - previous diagonal|
  std::vector<Complex<R>> diagonal;  // T[m][m]
  std::vector<R> residuals;          // |T[m][m] - T[m-1][m-1]|
};

// Extrapolates f(h_j) to h -> 0 for h_j = h_0 / ratio^j, assuming an
// expansion f(h) = f(0) + sum_m c_m h^{p_m}, p_m = first_power + m step.
template <class R>
RichardsonResult<R> richardson(const std::vector<Complex<R>>& values, R ratio,
                               int first_power = 1, int power_step = 1) {
  using std::abs;
  using std::pow;
  if (values.size() < 2) throw std::invalid_argument("richardson: need at least two rungs");
  std::vector<std::vector<Complex<R>>> T(values.size());
  RichardsonResult<R> out;
  for (std::size_t j = 0; j < values.size(); ++j) {
    T[j].push_back(values[j]);
    for (std::size_t m = 1; m <= j; ++m) {
      R f = pow(ratio, R(first_power + int(m - 1) * power_step));
      T[j].push_back((f * T[j][m - 1] - T[j - 1][m - 1]) / (f - 1));
    }
    out.diagonal.push_back(T[j][j]);
    if (j > 0) out.residuals.push_back(abs(T[j][j] - T[j - 1][j - 1]));
  }
  out.value = out.diagonal.back();
  out.error = out.residuals.back();
  return out;
}

}  // namespace kz

namespace kz {

// Geometric ladder h_j = eps0 / ratio^j, j < rungs.
template <class R>
struct LadderSpec {
  R eps0{0};
  R ratio{2};
  unsigned rungs = 6;
  int first_power = 1;
  int power_step = 1;
};

template <class R>
struct LadderResult {
  Complex<R> value{};
  R error{0};
  std::vector<R> eps;
  std::vector<Complex<R>> samples;
  std::vector<Complex<R>> diagonal;
  std::vector<R> residuals;
  bool converged = false;  // residuals shrink along the ladder
};

template <class R, class F>
LadderResult<R> extrapolate_ladder(F&& f, const LadderSpec<R>& spec) {
  if (!(spec.eps0 > 0) || !(spec.ratio > 1) || spec.rungs < 2)
    throw std::invalid_argument("extrapolate_ladder: bad ladder");
  LadderResult<R> out;
  R e = spec.eps0;
  for (unsigned j = 0; j < spec.rungs; ++j, e /= spec.ratio) {
    out.eps.push_back(e);
    out.samples.push_back(f(e));
  }
  auto r = richardson(out.samples, spec.ratio, spec.first_power, spec.power_step);
  out.value = r.value;
  out.error = r.error;
  out.diagonal = std::move(r.diagonal);
  out.residuals = std::move(r.residuals);
  using std::isfinite;
  out.converged = isfinite(out.error) && out.residuals.back() < out.residuals.front();
  return out;
}

}  // namespace kz
