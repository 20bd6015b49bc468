#pragma once

#include "kz/real.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace kz {

template <class R>
struct GaussRule {
  std::vector<R> nodes;  // on [-1, 1]
  std::vector<R> weights;
};

// Gauss-Legendre rule with n nodes, computed once per (type, n) and cached.
template <class R>
const GaussRule<R>& gauss_legendre(unsigned n);

// z = offset + r e^{i angle}, 0 <= r <= truncation
template <class R>
struct RayContour {
  R angle{0};
  Complex<R> offset{0};
  R truncation{0};

  Complex<R> direction() const { return std::polar(R(1), angle); }
  Complex<R> point(R r) const { return offset + r * direction(); }
};

template <class R>
struct QuadratureResult {
  Complex<R> value{};
  R error{0};  // panel disagreement plus tail bound
  R tail{0};
  std::size_t panels = 0;
  std::size_t evaluations = 0;
};

struct QuadratureOptions {
  unsigned nodes = 20;
  unsigned initial_panels = 8;
  std::size_t max_panels = 100000;
};

// int f(z) dz over the finite ray; tail_bound is the caller's bound on the
// part beyond ray.truncation and is added to the error.
template <class R, class F>
QuadratureResult<R> ray_integrate(F&& f, const RayContour<R>& ray, R tol, R tail_bound,
                                  const QuadratureOptions& opt = {}) {
  using std::abs;
  if (!(tol > 0)) throw std::invalid_argument("ray_integrate: tol must be positive");
  if (!(ray.truncation > 0)) throw std::invalid_argument("ray_integrate: empty ray");
  const GaussRule<R>& rule = gauss_legendre<R>(opt.nodes);
  const Complex<R> dir = ray.direction();
  QuadratureResult<R> out;

  auto panel = [&](R a, R b) {
    R half = (b - a) / 2, mid = (a + b) / 2;
    Complex<R> s(0);
    for (std::size_t i = 0; i < rule.nodes.size(); ++i)
      s += rule.weights[i] * f(ray.offset + (mid + half * rule.nodes[i]) * dir);
    out.evaluations += rule.nodes.size();
    return s * half * dir;
  };

  struct Piece {
    R a, b;
    Complex<R> whole;
  };
  std::vector<Piece> stack;
  const R L = ray.truncation;
  for (unsigned i = opt.initial_panels; i-- > 0;) {
    R a = L * R(i) / R(opt.initial_panels), b = L * R(i + 1) / R(opt.initial_panels);
    stack.push_back({a, b, panel(a, b)});
  }
  const R budget = tol / 2;
  while (!stack.empty()) {
    Piece p = stack.back();
    stack.pop_back();
    R m = (p.a + p.b) / 2;
    Complex<R> left = panel(p.a, m), right = panel(m, p.b);
    Complex<R> refined = left + right;
    R diff = abs(refined - p.whole);
    R local = budget * (p.b - p.a) / L;
    R floor = 64 * unit_roundoff<R>() * (abs(left) + abs(right));
    if (diff <= local || diff <= floor || (p.b - p.a) < L * 1e-14) {
      out.value += refined;
      out.error += diff + floor;
      ++out.panels;
      continue;
    }
    if (out.panels + stack.size() > opt.max_panels)
      throw NonConvergence("ray_integrate: panel budget exhausted");
    stack.push_back({m, p.b, right});
    stack.push_back({p.a, m, left});
  }
  out.tail = tail_bound;
  out.error += tail_bound;
  return out;
}

// Picks the truncation where envelope(r) (a bound on |int_r^inf f dz|)
// drops below tol/10.
template <class R, class F, class Env>
QuadratureResult<R> ray_integrate_auto(F&& f, R angle, R tol, Env&& envelope,
                                       Complex<R> offset = Complex<R>(0),
                                       const QuadratureOptions& opt = {}) {
  R target = tol / 10;
  R hi = 1;
  int guard = 0;
  while (envelope(hi) > target) {
    hi *= 2;
    if (++guard > 200) throw NonConvergence("ray_integrate: envelope does not decay");
  }
  R lo = hi / 2;
  for (int i = 0; i < 30 && hi > 1; ++i) {
    R mid = (lo + hi) / 2;
    if (envelope(mid) > target)
      lo = mid;
    else
      hi = mid;
  }
  RayContour<R> ray{angle, offset, hi};
  return ray_integrate(f, ray, tol * R(0.9), envelope(hi), opt);
}

}  // namespace kz
