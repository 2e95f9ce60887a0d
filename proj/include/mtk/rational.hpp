#ifndef MTK_RATIONAL_HPP
#define MTK_RATIONAL_HPP

#include <boost/multiprecision/gmp.hpp>
#include <string>
#include <string_view>

namespace mtk {

// All quantities in this library are exact rationals. GMP keeps them
// canonical (lowest terms, positive denominator). Expression templates are
// off so arithmetic yields plain values.
using Rat = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                          boost::multiprecision::et_off>;
using Int = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                          boost::multiprecision::et_off>;

using boost::multiprecision::abs;
using boost::multiprecision::numerator;
using boost::multiprecision::denominator;

/// Parse "7", "-3/4" or "1.25" (decimals convert exactly, 1.25 -> 5/4).
/// Throws Error("ParseError", ...) on anything else.
Rat parse_rational(std::string_view text);

/// Canonical text form: "p/q" when q != 1, plain integer otherwise.
std::string format_rational(const Rat& value);

/// Shortest exact decimal when the denominator is of the form 2^a 5^b
/// ("3/2" -> "1.5"), falling back to "p/q" otherwise.
std::string format_rational_decimal(const Rat& value);

} // namespace mtk

#endif
