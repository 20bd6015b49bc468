#include <doctest.h>

#include "kz/modular_forms.hpp"
#include "kz/summation.hpp"

#include <random>

using namespace kz;

namespace {

using C = Complex<double>;

RationalAngle ang(long n, long d) { return RationalAngle{Rational(n, d)}; }

Complex<double> to_d(const Complex<Quad>& z) {
  return {static_cast<double>(z.real()), static_cast<double>(z.imag())};
}

}  // namespace

TEST_CASE("eta at 2 pi i") {
  // mpmath: 0.19302528913989804...
  auto e = eta<double>(C(0, 2 * M_PI), 1e-15);
  CHECK(e.value.real() == doctest::Approx(0.19302528913989804).epsilon(1e-15));
  CHECK(std::abs(e.value.imag()) < 1e-16);
  auto p = eta<double>(C(0, 2 * M_PI), 1e-15, EtaMode::product);
  CHECK(std::abs(p.value - e.value) < 1e-15);
}

TEST_CASE("theta sum equals the product at random points") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> re(-1, 1), im(0.05, 3);
  for (int i = 0; i < 20; ++i) {
    C z(re(rng), im(rng));
    auto a = eta<double>(z, 1e-14);
    auto b = eta<double>(z, 1e-14, EtaMode::product);
    CHECK(std::abs(a.value - b.value) < 1e-12);
    // the unreduced theta sum agrees too
    auto c = weighted_theta<double>(z, 0, 1e-14);
    CHECK(std::abs(a.value - c.value) < 1e-12);
  }
}

TEST_CASE("eta modular transformation") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> re(-2, 2), im(0.02, 2);
  for (int i = 0; i < 30; ++i) {
    Complex<Quad> z(Quad(re(rng)), Quad(im(rng)));
    auto a = eta<Quad>(Quad(-1) / z, Quad(1e-28)).value;
    auto b = std::sqrt(Complex<Quad>(0, -1) * z) * eta<Quad>(z, Quad(1e-28)).value;
    CHECK(std::abs(static_cast<double>(std::abs(a - b))) < 1e-26);
    auto s = eta<Quad>(z + Quad(1), Quad(1e-28)).value;
    auto t = std::polar(Quad(1), pi<Quad>() / 12) * eta<Quad>(z, Quad(1e-28)).value;
    CHECK(std::abs(static_cast<double>(std::abs(s - t))) < 1e-26);
  }
}

TEST_CASE("eta at large imaginary part") {
  C z(0.3, 12);
  auto v = eta<double>(z, 1e-16).value * std::exp(C(0, -M_PI / 12) * z);
  CHECK(std::abs(v - C(1)) < 1e-12);
  auto t = eta_tilde<double>(z, 1e-20).value / std::exp(C(0, M_PI / 12) * z);
  CHECK(std::abs(t - C(1)) < 1e-12);
  CHECK_THROWS_AS(eta<double>(C(0.5, 0), 1e-10), std::domain_error);
  CHECK_THROWS_AS(eta<double>(C(0.5, -1), 1e-10), std::domain_error);
  CHECK_THROWS_AS(eta_tilde<double>(C(0.5, 0), 1e-10), std::domain_error);
}

TEST_CASE("numerical derivative of eta matches the n^2-weighted sum") {
  using Q = Complex<Quad>;
  for (C z0 : {C(0, 0.5), C(0.2, 0.3), C(-0.4, 1), C(0.1, 2), C(0.45, 0.15)}) {
    Q z(Quad(z0.real()), Quad(z0.imag()));
    const Quad h = Quad(1e-4);
    auto f = [&](Q w) { return eta<Quad>(w, Quad(1e-30)).value; };
    Q d = (f(z - Quad(2) * h) - Quad(8) * f(z - h) + Quad(8) * f(z + h) - f(z + Quad(2) * h)) /
          (Quad(12) * h);
    Q s = Q(0, pi<Quad>() / 12) * weighted_theta<Quad>(z, 2, Quad(1e-30)).value;
    CHECK(std::abs(to_d(d - s)) < 1e-8);
  }
}

TEST_CASE("delta equals the eta-tilde formula at x = 1") {
  auto g = trefoil_borel<double>();
  auto d = dirichlet_delta(g, C(1), 1e-15).value;
  auto t = C(0, std::sqrt(2.0)) * std::pow(M_PI, 1.5) * eta_tilde<double>(C(0, 2 * M_PI), 1e-16).value;
  CHECK(std::abs(d - t) < 1e-12);
}

TEST_CASE("strange identity: radial limits of eta-tilde are -2 phi") {
  for (auto a : {ang(1, 1), ang(1, 2), ang(1, 3), ang(-1, 1), ang(2, 5)}) {
    auto r = eta_tilde_radial<double>(a, default_eta_tilde_ladder<double>(a), 1e-14);
    CHECK(r.converged);
    CHECK(std::abs(r.value + 2.0 * phi<double>(a)) < 1e-4);
  }
}

TEST_CASE("g cross-check: direct quadrature versus the lateral sum") {
  for (double x : {1.0, 2.0, 0.5, -1.0, -0.3}) {
    auto a = zagier_g<double>(x, 1e-11);
    auto b = zagier_g<double>(x, 1e-12, GMode::direct);
    CHECK(std::abs(a.value - b.value) < 1e-9);
  }
  CHECK_THROWS_AS(zagier_g<double>(0.0, 1e-10), std::domain_error);
}

TEST_CASE("g modularity") {
  for (double a : {1.0, 2.0, 0.5}) {
    auto lhs = zagier_g<double>(a, 1e-11).value;
    auto rhs = std::pow(C(0, a), -1.5) * zagier_g<double>(-1 / a, 1e-11).value;
    CHECK(std::abs(lhs - rhs) < 1e-6);
  }
}

TEST_CASE("two-phi identity with phi from radial limits") {
  auto g = trefoil_borel<double>();
  auto r1 = radial_limit(g, ang(1, 1), default_radial_ladder<double>(ang(1, 1)), 1e-12);
  auto rm = radial_limit(g, ang(-1, 1), default_radial_ladder<double>(ang(-1, 1)), 1e-12);
  C lhs = r1.value + std::pow(C(0, 1), -1.5) * rm.value;
  auto rhs = zagier_g<double>(1.0, 1e-11).value;
  CHECK(std::abs(lhs - rhs) < 1e-4);
  CHECK(std::abs(rhs - C(0.0999004225046296, -0.2411809548974792)) < 1e-9);
}

TEST_CASE("Taylor coefficients of g at 0") {
  // g^{(n)}(0)/n! = (-pi i/12)^n a_n, central differences avoiding g(0)
  const Quad tol = Quad(1e-27);
  auto g = [&](Quad x) { return zagier_g<Quad>(x, tol, GMode::direct).value; };
  auto derivs = [&](Quad h) {
    auto p1 = g(h), m1 = g(-h), p2 = g(2 * h), m2 = g(-2 * h);
    std::array<Complex<Quad>, 3> d{(p1 - m1) / (2 * h), (p2 - p1 - m1 + m2) / (3 * h * h),
                                   (p2 - Quad(2) * p1 + Quad(2) * m1 - m2) / (2 * h * h * h)};
    return d;
  };
  Quad h = Quad(1e-3);
  auto d1 = derivs(h), d2 = derivs(h / 2);
  auto a = trefoil_coeffs(4).a;
  Complex<Quad> w(0, -pi<Quad>() / 12), wn(1);
  Quad fact = 1;
  for (unsigned n = 1; n <= 3; ++n) {
    wn *= w;
    fact *= Quad(n);
    Complex<Quad> est = (Quad(4) * d2[n - 1] - d1[n - 1]) / Quad(3) / fact;
    Complex<Quad> expect = wn * a[n].convert_to<Quad>();
    double rel = static_cast<double>(std::abs(est - expect) / std::abs(expect));
    CHECK(rel < 1e-3);
  }
  CHECK(std::abs(to_d(g(Quad(1e-4))) - C(1)) < 1e-2);
}
