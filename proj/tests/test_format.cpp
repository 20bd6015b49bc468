#include <doctest.h>

#include "kz/format.hpp"

#include <random>

using namespace kz;

TEST_CASE("complex literals") {
  using C = Complex<double>;
  CHECK(parse_complex<double>("2") == C(2, 0));
  CHECK(parse_complex<double>("-1") == C(-1, 0));
  CHECK(parse_complex<double>("2+1i") == C(2, 1));
  CHECK(parse_complex<double>("2-0.5i") == C(2, -0.5));
  CHECK(parse_complex<double>(" 1e-3 + 2i ") == C(1e-3, 2));
  CHECK(parse_complex<double>("1.5e+2-3e-1i") == C(150, -0.3));
  CHECK(parse_complex<double>("i") == C(0, 1));
  CHECK(parse_complex<double>("-i") == C(0, -1));
  CHECK(parse_complex<double>("3+i") == C(3, 1));
  CHECK(parse_complex<double>("3i") == C(0, 3));
  CHECK(parse_complex<double>("+4") == C(4, 0));
  for (const char* bad : {"", "abc", "1+", "2+3j", "1..2", "1+2i+3i", "e5", "1e"})
    CHECK_THROWS_AS(parse_complex<double>(bad), std::invalid_argument);
  auto q = parse_complex<Quad>("0.1+0.2i");
  CHECK(q.real() == Quad("0.1"));
  CHECK(q.imag() == Quad("0.2"));
}

TEST_CASE("real formatting round-trips exactly") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> mant(-1, 1);
  std::uniform_int_distribution<int> ex(-300, 300);
  for (int i = 0; i < 2000; ++i) {
    double v = std::ldexp(mant(rng), ex(rng));
    CHECK(parse_real<double>(format_real(v)) == v);
    Quad q = Quad(v) / 3;
    CHECK(parse_real<Quad>(format_real(q)) == q);
  }
  CHECK(format_real(1.0) == "1.0000000000000000e+00");
  CHECK(format_real(Quad(1)).size() == std::string("1.").size() + 35 + 4);
}

TEST_CASE("rationals are exact strings") {
  CHECK(format_rational(Rational(67637281, 7962624)) == "67637281/7962624");
  CHECK(format_rational(Rational(119)) == "119/1");
  CHECK(format_rational(Rational(-3, 6)) == "-1/2");
  CHECK(parse_rational(format_rational(Rational(23, 24))) == Rational(23, 24));
}

TEST_CASE("json and csv") {
  Json j;
  j["x"] = complex_json(Complex<double>(0.5, -2));
  std::string text = j.dump(2);
  CHECK(Json::parse(text).dump(2) == text);
  CHECK(j["x"]["re"] == "5.0000000000000000e-01");
  CHECK(csv_row({"a", "b,c", "say \"hi\""}) == "a,\"b,c\",\"say \"\"hi\"\"\"");
}
