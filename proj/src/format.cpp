#include "kz/format.hpp"

#include <cctype>
#include <charconv>
#include <cstdio>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace kz {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

// Length of the leading decimal literal (sign, digits, point, exponent).
std::size_t scan_number(const std::string& s, std::size_t pos) {
  std::size_t i = pos;
  if (i < s.size() && (s[i] == '+' || s[i] == '-')) ++i;
  std::size_t digits = 0;
  while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i, ++digits;
  if (i < s.size() && s[i] == '.') {
    ++i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i, ++digits;
  }
  if (digits == 0) return 0;
  if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
    std::size_t j = i + 1;
    if (j < s.size() && (s[j] == '+' || s[j] == '-')) ++j;
    std::size_t e = j;
    while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
    if (j > e) i = j;
  }
  return i - pos;
}

template <class R>
R from_literal(const std::string& lit) {
  if constexpr (std::is_same_v<R, double>) {
    // from_chars rejects a leading '+'
    std::string t = lit[0] == '+' ? lit.substr(1) : lit;
    double v = 0;
    auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc() || p != t.data() + t.size())
      throw std::invalid_argument("bad number '" + lit + "'");
    return v;
  } else {
    return R(lit);
  }
}

}  // namespace

template <class R>
std::string format_real(R v) {
  constexpr int digits = std::numeric_limits<R>::max_digits10;
  if constexpr (std::is_same_v<R, double>) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*e", digits - 1, v);
    return buf;
  } else {
    return v.str(digits - 1, std::ios::scientific);
  }
}

template <class R>
Json complex_json(const Complex<R>& z) {
  Json j;
  j["re"] = format_real(z.real());
  j["im"] = format_real(z.imag());
  return j;
}

template <class R>
R parse_real(const std::string& s) {
  std::string t = trim(s);
  std::size_t n = scan_number(t, 0);
  if (n == 0 || n != t.size()) throw std::invalid_argument("not a real number: '" + s + "'");
  return from_literal<R>(t);
}

template <class R>
Complex<R> parse_complex(const std::string& s) {
  std::string t;
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) t += c;
  auto bad = [&] { return std::invalid_argument("not a complex number 'a+bi': '" + s + "'"); };
  if (t.empty()) throw bad();
  if (t.back() != 'i') {
    try {
      return {parse_real<R>(t), R(0)};
    } catch (const std::invalid_argument&) {
      throw bad();
    }
  }
  t.pop_back();
  // split at the last sign that does not belong to an exponent
  std::size_t k = std::string::npos;
  for (std::size_t i = t.size(); i-- > 1;)
    if ((t[i] == '+' || t[i] == '-') && t[i - 1] != 'e' && t[i - 1] != 'E') {
      k = i;
      break;
    }
  std::string re = k == std::string::npos ? "" : t.substr(0, k);
  std::string im = k == std::string::npos ? t : t.substr(k);
  auto coef = [&](const std::string& c) -> R {
    if (c.empty() || c == "+") return R(1);
    if (c == "-") return R(-1);
    return parse_real<R>(c);
  };
  try {
    return {re.empty() ? R(0) : parse_real<R>(re), coef(im)};
  } catch (const std::invalid_argument&) {
    throw bad();
  }
}

std::string format_rational(const Rational& q) {
  return boost::multiprecision::numerator(q).str() + "/" +
         boost::multiprecision::denominator(q).str();
}

std::string csv_row(const std::vector<std::string>& fields) {
  std::string out;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out += ',';
    const std::string& f = fields[i];
    if (f.find_first_of(",\"\n") == std::string::npos) {
      out += f;
      continue;
    }
    out += '"';
    for (char c : f) {
      if (c == '"') out += '"';
      out += c;
    }
    out += '"';
  }
  return out;
}

template std::string format_real(double);
template std::string format_real(Quad);
template Json complex_json(const Complex<double>&);
template Json complex_json(const Complex<Quad>&);
template double parse_real(const std::string&);
template Quad parse_real(const std::string&);
template Complex<double> parse_complex(const std::string&);
template Complex<Quad> parse_complex(const std::string&);

}  // namespace kz
