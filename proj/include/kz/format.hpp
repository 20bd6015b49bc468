#pragma once

#include "kz/real.hpp"
#include "kz/series.hpp"

#include <json.hpp>

#include <string>

namespace kz {

using Json = nlohmann::ordered_json;

// Shortest scientific form that reads back to the same value: 17 significant
// digits for double, 36 for Quad.
template <class R>
std::string format_real(R v);

template <class R>
Json complex_json(const Complex<R>& z);  // {"re": "...", "im": "..."}

// "a", "bi", "a+bi", "a-bi" with optional exponents; "i" alone means 1i.
// Throws std::invalid_argument on anything else.
template <class R>
Complex<R> parse_complex(const std::string& s);

template <class R>
R parse_real(const std::string& s);

std::string format_rational(const Rational& q);  // always "num/den"

// Joins fields with commas, quoting any field that holds a comma or quote.
std::string csv_row(const std::vector<std::string>& fields);

}  // namespace kz
