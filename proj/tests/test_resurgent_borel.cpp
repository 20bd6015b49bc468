#include <doctest.h>

#include "kz/kz_invariants.hpp"
#include "kz/resurgent_borel.hpp"

#include <random>

using namespace kz;

namespace {

template <class R>
Complex<R> at(const SqrtBranched<R>& g, Complex<R> p, R tol, Sheet s = Sheet::principal) {
  return eval(g, SheetedPoint<R>{p, s}, tol).value;
}

double to_d(const Rational& q) { return q.convert_to<double>(); }

}  // namespace

TEST_CASE("instance metadata") {
  const double pi = M_PI;
  auto t = trefoil_borel<double>();
  CHECK(t.first_singularity() == doctest::Approx(pi * pi / 6).epsilon(1e-15));
  CHECK(t.term(1).c == doctest::Approx(3 * pi / (2 * std::sqrt(2.0))).epsilon(1e-15));
  CHECK(t.term(5).c == doctest::Approx(-15 * pi / (2 * std::sqrt(2.0))).epsilon(1e-15));
  CHECK(t.term(2).c == 0);
  CHECK(t.weight() == 5);
  CHECK(t.a0 == 1);

  auto p = poincare_borel<double>();
  CHECK(p.first_singularity() == doctest::Approx(pi * pi / 30).epsilon(1e-15));
  CHECK(p.weight() == 3);
  CHECK(poincare_c1<double>() == doctest::Approx(0.0549092735697554).epsilon(1e-14));
  CHECK(poincare_c2<double>() == doctest::Approx(0.0339357973636751).epsilon(1e-14));
  CHECK(p.term(1).c == doctest::Approx(std::sqrt(30.0) * poincare_c2<double>()).epsilon(1e-14));
  CHECK(p.term(7).c == doctest::Approx(std::sqrt(30.0) * poincare_c1<double>()).epsilon(1e-14));
  CHECK_THROWS_AS(p.term(0), std::out_of_range);
}

TEST_CASE("trefoil G(0) = 23/24") {
  auto g = trefoil_borel<Quad>();
  auto v = eval(g, SheetedPoint<Quad>{Complex<Quad>(0)}, Quad(1e-18));
  CHECK(v.error <= Quad(1e-18));
  CHECK(std::abs(static_cast<double>(v.value.real() - Quad(23) / 24)) < 1e-18);
  CHECK(v.value.imag() == 0);
  CHECK(trefoil_borel_taylor(0) == Rational(23, 24));
}

TEST_CASE("finite differences of eval reproduce the Taylor coefficients") {
  auto g = trefoil_borel<Quad>();
  const Quad h = Quad(1e-4);
  auto f = [&](Quad p) { return at(g, Complex<Quad>(p), Quad(1e-18)).real(); };
  Quad d1 = (f(-2 * h) - 8 * f(-h) + 8 * f(h) - f(2 * h)) / (12 * h);
  Quad d2 = (-f(-2 * h) + 16 * f(-h) - 30 * f(Quad(0)) + 16 * f(h) - f(2 * h)) / (12 * h * h);
  CHECK(std::abs(static_cast<double>(d1) - to_d(trefoil_borel_taylor(1))) < 1e-12);
  CHECK(std::abs(static_cast<double>(d2 / 2) - to_d(trefoil_borel_taylor(2))) < 1e-7);
}

TEST_CASE("numeric Taylor coefficients agree with the exact ones") {
  auto g = trefoil_borel<Quad>();
  auto tc = taylor_coeffs(g, 12, Quad(1e-18));
  REQUIRE(tc.exact.has_value());
  for (unsigned j = 0; j < 12; ++j) {
    Quad e = (*tc.exact)[j].convert_to<Quad>();
    Quad diff = tc.numeric[j].value.real() - e;
    if (diff < 0) diff = -diff;
    CHECK(diff <= tc.numeric[j].error);
    CHECK(tc.numeric[j].error <= Quad(1e-18));
  }
}

TEST_CASE("Poincare Taylor coefficients match the Borel transform of its series") {
  auto g = poincare_borel<double>();
  auto B = borel_transform(poincare_coeffs(9).f_series());
  auto tc = taylor_coeffs(g, 7, 1e-13);
  REQUIRE(tc.exact.has_value());
  for (unsigned j = 0; j <= 6; ++j) {
    CHECK((*tc.exact)[j] == B[j]);
    double e = to_d(B[j]);
    CHECK(std::abs(tc.numeric[j].value.real() - e) <= 1e-8 * std::max(1.0, std::abs(e)));
  }
}

TEST_CASE("the printed Poincare formula is the normalized one divided by -900") {
  auto n = poincare_borel<double>();
  auto p = poincare_borel_printed<double>();
  const double f = to_d(poincare_printed_factor());
  CHECK(f == -900);
  for (Complex<double> z : {Complex<double>(0.1), Complex<double>(0.2, 0.1), Complex<double>(-1, 2)}) {
    auto a = at(n, z, 1e-12);
    auto b = at(p, z, 1e-15);
    CHECK(std::abs(b * f - a) < 1e-10);
  }
}

TEST_CASE("exact b_n equal the Borel transform of F for n <= 30") {
  auto B = borel_transform(trefoil_coeffs(32).f_series());
  auto e = trefoil_taylor_exact(31);
  for (unsigned n = 0; n <= 30; ++n) CHECK(e[n] == B[n]);
}

TEST_CASE("ratio test locates the first singularity") {
  // b_n ~ C binom(n + 3/2, n) eta^{-n}: corrections are O(4^{-n})
  const double eta = M_PI * M_PI / 6;
  for (unsigned n : {40u, 60u}) {
    double r = to_d(trefoil_borel_taylor(n + 1) / trefoil_borel_taylor(n));
    double predicted = (n + 2.5) / (n + 1) / eta;
    CHECK(std::abs(r / predicted - 1) < 1e-10);
  }
}

TEST_CASE("Schwarz reflection") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-4, 4);
  auto t = trefoil_borel<double>();
  auto p = poincare_borel<double>();
  for (int i = 0; i < 40; ++i) {
    Complex<double> z(u(rng), u(rng));
    if (z.imag() == 0) continue;
    for (auto* g : {&t, &p}) {
      auto a = at(*g, z, 1e-12);
      auto b = at(*g, std::conj(z), 1e-12);
      CHECK(std::abs(a - std::conj(b)) < 1e-12);
    }
  }
}

TEST_CASE("second sheet and branch cuts") {
  auto g = SqrtBranched<double>::finite({{1.0, 2.0, 3}, {4.0, -1.0, 3}}, "toy");
  Complex<double> z(2.0, 0.5);
  auto a = at(g, z, 1e-14);
  auto b = at(g, z, 1e-14, Sheet::second);
  CHECK(std::abs(a + b) < 1e-15);
  Complex<double> expect = 2.0 / std::pow(std::sqrt(Complex<double>(1) - z), 3) -
                           1.0 / std::pow(std::sqrt(Complex<double>(4) - z), 3);
  CHECK(std::abs(a - expect) < 1e-14);
  // approaching the cut from above and below gives conjugate values
  auto up = at(g, Complex<double>(2, 1e-12), 1e-14);
  auto dn = at(g, Complex<double>(2, -1e-12), 1e-14);
  CHECK(std::abs(up - std::conj(dn)) < 1e-9);
  CHECK(std::abs(up - dn) > 1);
  CHECK_THROWS_AS(at(g, Complex<double>(2), 1e-14), std::domain_error);
  CHECK_THROWS_AS(at(g, Complex<double>(1), 1e-14), std::domain_error);
  CHECK_NOTHROW(at(g, Complex<double>(0.5), 1e-14));

  auto t = trefoil_borel<double>();
  CHECK_THROWS_AS(at(t, Complex<double>(2), 1e-10), std::domain_error);
  CHECK_NOTHROW(at(t, Complex<double>(1.6), 1e-10));
  CHECK_THROWS_AS(SqrtBranched<double>::finite({{1.0, 1.0, 2}}), std::invalid_argument);
}

TEST_CASE("unreachable tolerance throws") {
  auto p = poincare_borel<double>();
  CHECK_THROWS_AS(eval(p, SheetedPoint<double>{Complex<double>(0.1)}, 1e-40), NonConvergence);
}

TEST_CASE("tail bounds dominate the actual tails") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> un(5, 400);
  std::uniform_real_distribution<double> ua(0, 1);
  for (auto g : {trefoil_borel<double>(), poincare_borel<double>()}) {
    for (int trial = 0; trial < 30; ++trial) {
      std::int64_t N = un(rng);
      double rmax = g.scale() * double(N + 1) * double(N + 1) / 2;
      Complex<double> z = std::polar(rmax * ua(rng), 2 * M_PI * ua(rng));
      unsigned j = trial % 3;
      Complex<double> tail(0);
      for (std::int64_t n = N + 1; n <= 200000; ++n) {
        auto t = g.term(n);
        if (t.c == 0) continue;
        tail += t.c * std::pow(std::sqrt(Complex<double>(t.eta) - z), -(t.k + 2 * int(j)));
      }
      CHECK(std::abs(tail) <= g.tail_bound(N, std::abs(z), j));
    }
    CHECK(std::isinf(g.tail_bound(3, 1e6)));
  }
}
