#pragma once

#include "kz/real.hpp"

namespace kz {

// Dawson integral D(z) = exp(-z^2) int_0^z exp(t^2) dt.
template <class R>
Complex<R> dawson(const Complex<R>& z);

// mantissa * exp(exponent)
template <class R>
struct ScaledValue {
  Complex<R> mantissa;
  Complex<R> exponent;
  Complex<R> value() const;  // throws std::overflow_error when out of range
};

// Erfi(z) = (2/sqrt pi) int_0^z exp(t^2) dt
template <class R>
ScaledValue<R> erfi_scaled(const Complex<R>& z);
template <class R>
Complex<R> erfi(const Complex<R>& z);

// E(z) = exp(-z^2) z^3 Erfi(z) - z^2/sqrt(pi), an even function.
template <class R>
Complex<R> e_mod(const Complex<R>& z);

// E(z) - (1/sqrt pi) sum_{k=1}^{J} (2k-1)!!/2^k z^{2-2k}; J = 0 gives E itself.
template <class R>
Complex<R> e_mod_remainder(const Complex<R>& z, unsigned J);

// Working-precision error bound for e_mod_remainder(z, J), J small.
template <class R>
R e_mod_rounding_bound(const Complex<R>& z);

// |z|^2 at and beyond which the asymptotic expansions are used.
template <class R>
R asymptotic_radius_sq();

}  // namespace kz
