#include <doctest.h>

#include "kz/characters.hpp"

#include <numeric>

using namespace kz;

TEST_CASE("chi12 table") {
  CHECK(chi12(7) == -1);
  CHECK(chi12(11) == 1);
  CHECK(chi12(12) == 0);
  CHECK(chi12(1) == 1);
  CHECK(chi12(5) == -1);
  CHECK(chi12(-1) == 1);
}

TEST_CASE("chi12 periodic and multiplicative") {
  for (long n = 1; n <= 10000; n += 7) CHECK(chi12(n) == chi12(n + 12));
  for (long n = 1; n <= 10000; n += 97)
    for (long m = 1; m <= 10000; m += 89)
      if (std::gcd(n, m) == 1) CHECK(chi12(n * m) == chi12(n) * chi12(m));
}

TEST_CASE("chi60 tables") {
  CHECK(chi60(1, 37) == 1);
  CHECK(chi60(2, 1) == -1);
  CHECK(chi60(1, 2) == 0);
  CHECK(chi60(1, 7) == -1);
  CHECK(chi60(2, 59) == 1);
  CHECK(chi60(2, 60 + 31) == 1);
  CHECK_THROWS_AS(chi60(3, 1), std::invalid_argument);
  for (int which : {1, 2})
    for (long n = 0; n < 600; ++n)
      if (n % 2 == 0 || n % 3 == 0 || n % 5 == 0) CHECK(chi60(which, n) == 0);
  CHECK(PeriodicCharacter::chi60_1().is_odd());
  CHECK(PeriodicCharacter::chi60_2().is_odd());
  CHECK(PeriodicCharacter::chi12().is_even());
}

TEST_CASE("exact L-values") {
  CHECK(l_value_exact(0).coefficient == Rational(1, 6));
  CHECK(l_value_exact(0).pi_power == 2);
  // 54 sqrt3 L(4)/pi^4 = 23/24
  CHECK(54 * l_value_exact(1).coefficient == Rational(23, 24));
  double l2 = l_value_exact(0).value<double>();
  CHECK(l2 == doctest::Approx(0.9497031262940094).epsilon(1e-14));
}

TEST_CASE("partial L-series") {
  auto p = l_series_partial<Quad>(PeriodicCharacter::chi12(), Quad(2), 1000000);
  Quad exact = l_value_exact(0).value<Quad>();
  CHECK(abs(p.value - exact) <= p.total_bound());
  // Cutting at a full period removes the O(N^-2) boundary term.
  auto q = l_series_partial<Quad>(PeriodicCharacter::chi12(), Quad(2), 1200000);
  CHECK(abs(q.value - exact) < Quad(1e-15));

  auto p4 = l_series_partial<double>(PeriodicCharacter::chi12(), 4.0, 1000);
  CHECK(std::abs(p4.value - l_value_exact(1).value<double>()) <= p4.total_bound());

  auto one = l_series_partial<double>(PeriodicCharacter::chi60_2(), 2.0, 1);
  CHECK(one.value == -1.0);
  CHECK(one.tail_bound == doctest::Approx(60.0));

  CHECK_THROWS_AS(l_series_partial<double>(PeriodicCharacter::chi12(), 1.0, 10), std::domain_error);
}

TEST_CASE("exact L-values agree with partial sums up to n = 25") {
  for (unsigned n = 0; n <= 25; ++n) {
    Quad s = 2 * n + 2;
    auto p = l_series_partial<Quad>(PeriodicCharacter::chi12(), s, n == 0 ? 200000 : 2000);
    Quad exact = l_value_exact(n).value<Quad>();
    Quad value_err = 16 * unit_roundoff<Quad>() * (2 * n + 4) * abs(exact);
    CHECK(abs(p.value - exact) <= p.total_bound() + value_err);
  }
}
