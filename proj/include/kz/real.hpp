#pragma once

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/float128.hpp>

#include <complex>
#include <cstdint>
#include <limits>
#include <string>

namespace kz {

// 113-bit binary floating point; about 34 significant decimal digits.
using Quad = boost::multiprecision::float128;

template <class R>
using Complex = std::complex<R>;

template <class R>
inline R pi() {
  return boost::math::constants::pi<R>();
}

template <class R>
inline R sqrt_pi() {
  return boost::math::constants::root_pi<R>();
}

template <class R>
inline R unit_roundoff() {
  return std::numeric_limits<R>::epsilon() / 2;
}

template <class R>
inline constexpr int digits10_v = std::numeric_limits<R>::digits10;

// A value together with an absolute error bound (or estimate, where noted).
template <class R>
struct Estimate {
  Complex<R> value{};
  R error{0};
};

// Thrown when an iterative procedure exhausts its budget before reaching
// the requested tolerance.
class NonConvergence : public std::runtime_error {
 public:
  explicit NonConvergence(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace kz
