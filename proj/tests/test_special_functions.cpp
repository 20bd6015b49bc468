#include <doctest.h>

#include "kz/quadrature.hpp"
#include "kz/richardson.hpp"
#include "kz/special_functions.hpp"

#include <random>

using namespace kz;

namespace {

struct Ref {
  double re, im;
  const char *d_re, *d_im, *e_re, *e_im;
};

// 50-digit reference values: D(z) = (sqrt pi/2) e^{-z^2} Erfi(z) and
// E(z) = e^{-z^2} z^3 Erfi(z) - z^2/sqrt pi.
const Ref kRefs[] = {
    {1, 0, "0.538079506912768419136387420407556755", "0.0", "0.0429681222936374421669587842399723353", "0.0"},
    {0.5, 0.5, "0.629144697713627833709567745484912137", "0.305239465617538820913230702309740061", "-0.263584905991714802832254669227812369", "-0.190722812771262241815811391833133189"},
    {2, 1, "0.163539409434535561490434523287568858", "-0.153124575537122980358591811268324107", "0.577108565637557648214588497651377099", "-0.572444407548524878587058482017184522"},
    {3, -2, "0.110513882196723104540259108034761948", "0.0771238301053896112030426892210144292", "0.0598844873171744279282804344888649422", "0.250778826076276758530161693090378883"},
    {0.1, 4, "5593047.35855749772182242603952677688", "5432049.13262827462793433437365452457", "361259924.651932036715390762378156956", "-432566714.50857577967384603234365834"},
    {-2, 3, "70.5023377945093065810910546521386121", "110.874321340997180680501364312936986", "2536.30146176175212095159241826973816", "6477.7312186758592907934293349784219"},
    {5, 5, "-0.183037862583167791067053471385636467", "0.804694569947761048592262112576856249", "-175.36611941884963435507873804081001", "-306.843654060506327543103525401032273"},
    {9, 0.5, "0.0557274970102769295217736786448409178", "-0.0031352988829395744626132895528928554", "0.287433850488310562554993701564279896", "-0.000614592679484515951037547902346455619"},
    {9.5, 3, "0.048012694972006795009375914516285518", "-0.0153180469839678914044111699325305268", "0.285620396080894014121015007538858589", "-0.00255324529009876815378957533559445509"},
    {12, 1, "0.0415194382590661857360601855422452494", "-0.00348423229619706637553060230806572024", "0.285021416915172310633151615871809133", "-0.000500047442909562546699988151337783445"},
    {6.5, 0.1, "0.0778481953603268347903624270778212952", "-0.00122784669723130454157683584775056767", "0.29274892730511251639979778659865957", "-0.000349731107804289453898173615797223379"},
    {7, 7, "-0.47261709900342498486444438138236462", "-0.761968946627845996290379188696514106", "955.653685279729036429955264086612268", "168.687458230834292607489849851842974"},
    {0, 3, "0.0", "7181.01252018092747078921768410189294", "218783.510719705400486091122369735098", "0.0"},
    {4, -4.5, "-61.5643162432994481158427897809149406", "8.01297664781658869429021494556343875", "13566.2297332079799981488552345802177", "7076.65383526779833895240911339279614"},
    {15, 14, "0.0177964000194993891621323090657030835", "-0.0166494861639854235892744398561834981", "0.282158104578381275089416252710834408", "-0.00100347474323295233883490127306968474"},
    {2, 8, "55808664612313255262355731.6374353009", "84429885825308510026297744.0441510705", "15953898717165810211816176720.294115", "-62018022664972808411108692618.5860383"},
};

template <class R>
Complex<R> parse(const char* re, const char* im) {
  return Complex<R>(R(re), R(im));
}

template <>
Complex<double> parse<double>(const char* re, const char* im) {
  return Complex<double>(std::stod(re), std::stod(im));
}

template <class R>
R rel_err(Complex<R> a, Complex<R> b) {
  return std::abs(a - b) / std::max<R>(R(1e-300), std::abs(b));
}

}  // namespace

TEST_CASE_TEMPLATE("dawson and e_mod against reference values", R, double, Quad) {
  R tol = std::is_same_v<R, double> ? R(2e-13) : R(1e-29);
  for (const Ref& r : kRefs) {
    Complex<R> z(R(r.re), R(r.im));
    CAPTURE(r.re);
    CAPTURE(r.im);
    CHECK(rel_err(dawson(z), parse<R>(r.d_re, r.d_im)) < tol);
    CHECK(rel_err(e_mod(z), parse<R>(r.e_re, r.e_im)) < tol * 10);
  }
}

TEST_CASE("special values") {
  using C = Complex<double>;
  CHECK(dawson(C(0)) == C(0));
  CHECK(erfi(C(0)) == C(0));
  CHECK(e_mod(C(0)) == C(0));
  CHECK(std::abs(dawson(C(1)) - C(0.5380795069127684)) < 1e-15);
  CHECK(std::abs(erfi(C(1)) - C(1.6504257587975429)) < 1e-14);
  CHECK(std::abs(e_mod(C(2)) - C(0.46345140233750446)) < 1e-14);
  Complex<Quad> q = erfi(Complex<Quad>(1));
  CHECK(abs(q.real() - Quad("1.65042575879754287602533772956136244")) < Quad(1e-32));
}

TEST_CASE("dawson large real argument") {
  double x = 50;
  double d = dawson(Complex<double>(x)).real();
  double asym = 1 / (2 * x) + 1 / (4 * x * x * x);
  CHECK(std::abs(d - asym) < 3.0 / (8 * std::pow(x, 5)) * 1.01);
  CHECK(std::abs(d - asym) > 3.0 / (8 * std::pow(x, 5)) * 0.99);
}

TEST_CASE("dawson is accurate on both sides of the asymptotic switch") {
  // the double switch radius is well inside the Quad Taylor region
  double R2 = asymptotic_radius_sq<double>();
  for (double arg : {0.0, 0.3, 0.7, 1.2, 1.5707963267948966})
    for (double f : {1 - 1e-9, 1 + 1e-9}) {
      auto z = std::polar(std::sqrt(R2) * f, arg);
      auto d = dawson(z);
      auto q = dawson(Complex<Quad>(Quad(z.real()), Quad(z.imag())));
      Complex<double> qd(static_cast<double>(q.real()), static_cast<double>(q.imag()));
      CHECK(std::abs(d - qd) <= 2e-13 * std::abs(qd));
    }
}

TEST_CASE("dawson differential identity") {
  std::mt19937_64 rng(12345);
  std::uniform_real_distribution<double> u(-6, 6);
  int tested = 0;
  while (tested < 100) {
    Complex<Quad> z(u(rng), u(rng));
    if (abs(z) > 6) continue;
    ++tested;
    // central differences with one Richardson step at h = 1e-5
    Quad h("1e-5");
    auto d1 = [&](Quad hh) { return (dawson(z + hh) - dawson(z - hh)) / (2 * hh); };
    Complex<Quad> deriv = (Quad(4) * d1(h / 2) - d1(h)) / Quad(3);
    Complex<Quad> rhs = Quad(1) - Quad(2) * z * dawson(z);
    CHECK(abs(deriv - rhs) <= Quad(1e-12) * (1 + abs(rhs)));
  }
}

TEST_CASE("erfi properties") {
  std::mt19937_64 rng(777);
  std::uniform_real_distribution<double> u(-3, 3);
  for (int i = 0; i < 50; ++i) {
    Complex<double> z(u(rng), u(rng));
    CHECK(std::abs(erfi(-z) + erfi(z)) <= 1e-15 * (1 + std::abs(erfi(z))));
    double y = u(rng);
    // Erfi(iy) = i erf(y)
    auto v = erfi(Complex<double>(0, y));
    CHECK(std::abs(v - Complex<double>(0, std::erf(y))) < 1e-14);
    double x = u(rng);
    CHECK(std::abs(erfi(Complex<double>(x)).real() -
                   2 / std::sqrt(M_PI) * std::exp(x * x) * dawson(Complex<double>(x)).real()) <
          1e-13 * std::exp(x * x));
  }
  // imaginary axis far out, where the scaled form is needed internally
  CHECK(std::abs(erfi(Complex<double>(0, 30)) - Complex<double>(0, 1)) < 1e-15);
  CHECK_THROWS_AS(erfi(Complex<double>(40, 0)), std::overflow_error);
  auto s = erfi_scaled(Complex<double>(40, 0));
  CHECK(s.exponent.real() == doctest::Approx(1600));
  CHECK(std::abs(s.mantissa) == doctest::Approx(2 / std::sqrt(M_PI) / 80).epsilon(1e-3));
}

TEST_CASE("e_mod large-argument behaviour") {
  // E(z) -> 1/(2 sqrt pi) with E - 1/(2 sqrt pi) ~ 3/(4 sqrt pi z^2)
  double c = 1 / (2 * std::sqrt(M_PI));
  for (double x = 10; x <= 100; x += 5) {
    auto e = e_mod(Complex<double>(x));
    CHECK(std::abs(e.imag()) < 1e-16);
    double corr = (e.real() - c) * x * x;
    CHECK(corr == doctest::Approx(3 / (4 * std::sqrt(M_PI))).epsilon(0.05));
  }
  for (double arg : {-0.7, -0.3, 0.0, 0.3, 0.7})
    for (double r = 10; r <= 60; r += 10) {
      auto z = std::polar(r, arg);
      CHECK(std::abs(e_mod(z) - c) <= 1.0 / r);
    }
}

TEST_CASE("e_mod remainder removes asymptotic terms") {
  for (double r : {3.0, 5.0, 6.0, 7.0, 20.0}) {
    auto z = std::polar(r, 0.4);
    Complex<Quad> zq(Quad(z.real()), Quad(z.imag()));
    Complex<Quad> e = e_mod(zq);
    Complex<Quad> s(0), term(1 / (2 * sqrt(pi<Quad>())));
    for (unsigned J = 0; J <= 5; ++J) {
      if (J >= 1) {
        if (J > 1) term *= Quad(2 * J - 1) / Quad(2) / (zq * zq);
        s += term;
      }
      CHECK(abs(e_mod_remainder(zq, J) - (e - s)) < Quad(1e-28) * (1 + abs(e)));
    }
  }
}

TEST_CASE_TEMPLATE("gauss-legendre rule", R, double, Quad) {
  const auto& g = gauss_legendre<R>(20);
  R s = 0, s8 = 0;
  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    s += g.weights[i];
    s8 += g.weights[i] * pow(g.nodes[i], 38);
  }
  R eps = 64 * std::numeric_limits<R>::epsilon();
  CHECK(abs(s - 2) < eps);
  CHECK(abs(s8 - R(2) / 39) < eps);
}

TEST_CASE_TEMPLATE("ray integration oracles", R, double, Quad) {
  R tol = std::is_same_v<R, double> ? R(1e-12) : R(1e-26);
  using std::cos;
  using std::exp;
  auto expo = [](Complex<R> z) { return std::exp(-z); };
  auto env = [](R r) { return exp(-r * cos(R(0.5236))) / cos(R(0.5236)); };
  {
    auto res = ray_integrate_auto<R>(expo, R(0), tol, [](R r) { using std::exp; return exp(-r); });
    CHECK(std::abs(res.value - Complex<R>(1)) <= res.error);
    CHECK(res.error <= tol);
  }
  {
    auto res = ray_integrate_auto<R>([](Complex<R> z) { return std::exp(-z * z); }, R(0), tol,
                                     [](R r) { using std::exp; return exp(-r * r) / (2 * r); });
    CHECK(std::abs(res.value - Complex<R>(sqrt_pi<R>() / 2)) <= res.error);
  }
  {
    // path independence for an entire decaying integrand
    R angle = pi<R>() / 6;
    auto res = ray_integrate_auto<R>(expo, angle, tol, env);
    CHECK(std::abs(res.value - Complex<R>(1)) <= res.error);
  }
}

TEST_CASE("ray integration budget") {
  QuadratureOptions opt;
  opt.max_panels = 4;
  RayContour<double> ray{0, 0, 100};
  auto wild = [](Complex<double> z) { return std::exp(Complex<double>(0, 50) * z * z); };
  CHECK_THROWS_AS(ray_integrate<double>(wild, ray, 1e-14, 0.0, opt), NonConvergence);
}

TEST_CASE("richardson on a polynomial in h") {
  std::vector<Complex<double>> v;
  for (int j = 0; j < 5; ++j) {
    double h = 0.1 / std::pow(2.0, j);
    v.emplace_back(3 + 2 * h - 5 * h * h + h * h * h, h);
  }
  auto r = richardson<double>(v, 2.0);
  CHECK(std::abs(r.value - Complex<double>(3)) < 1e-13);
  CHECK(r.residuals.size() == 4);
}
