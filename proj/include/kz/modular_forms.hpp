#pragma once

#include "kz/kz_invariants.hpp"
#include "kz/real.hpp"
#include "kz/richardson.hpp"

namespace kz {

enum class EtaMode { theta_sum, product };

// Dedekind eta for Im z > 0. The theta-sum mode reduces z to the standard
// fundamental domain first.
template <class R>
Estimate<R> eta(const Complex<R>& z, R tol, EtaMode mode = EtaMode::theta_sum);

// sum chi(n) n^m exp(pi i n^2 z / 12), m = 0, 1, 2, summed directly.
template <class R>
Estimate<R> weighted_theta(const Complex<R>& z, unsigned m, R tol);

// eta~(z) = sum chi(n) n exp(pi i n^2 z / 12)
template <class R>
Estimate<R> eta_tilde(const Complex<R>& z, R tol);

// eta~(alpha + i eps) with the phases reduced exactly.
template <class R>
Estimate<R> eta_tilde_at(const RationalAngle& alpha, R eps, R tol);

// Ladder in eps for eta~(alpha + i eps): eps0 = 0.01 / den(alpha)^2.
template <class R>
LadderSpec<R> default_eta_tilde_ladder(const RationalAngle& alpha);

template <class R>
LadderResult<R> eta_tilde_radial(const RationalAngle& alpha, const LadderSpec<R>& ladder, R tol);

enum class GMode { delegate, direct };

// Zagier's g on the real line (x != 0): the lateral sum at i/(2 pi x), or
// the eta integral along the imaginary axis in direct mode.
template <class R>
Estimate<R> zagier_g(R x, R tol, GMode mode = GMode::delegate);

}  // namespace kz
