#include "mtk/rational.hpp"
#include "mtk/error.hpp"

#include <algorithm>
#include <cctype>

namespace mtk {

namespace {

bool all_digits(std::string_view s) {
    if (s.empty())
        return false;
    return std::all_of(s.begin(), s.end(),
                       [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
}

[[noreturn]] void bad_number(std::string_view text) {
    throw Error("ParseError", "not a rational number: '" + std::string(text) + "'");
}

} // namespace

Rat parse_rational(std::string_view text) {
    std::string_view s = text;
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
        s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
        s.remove_suffix(1);
    if (s.empty())
        bad_number(text);

    bool negative = false;
    if (s.front() == '+' || s.front() == '-') {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }

    if (auto slash = s.find('/'); slash != std::string_view::npos) {
        std::string_view num = s.substr(0, slash);
        std::string_view den = s.substr(slash + 1);
        if (!all_digits(num) || !all_digits(den))
            bad_number(text);
        Int q{std::string(den)};
        if (q == 0)
            bad_number(text);
        Rat r(Int{std::string(num)}, q);
        return negative ? -r : r;
    }

    if (auto dot = s.find('.'); dot != std::string_view::npos) {
        std::string_view whole = s.substr(0, dot);
        std::string_view frac = s.substr(dot + 1);
        if (whole.empty() && frac.empty())
            bad_number(text);
        if (!whole.empty() && !all_digits(whole))
            bad_number(text);
        if (!frac.empty() && !all_digits(frac))
            bad_number(text);
        Int scaled{std::string(whole.empty() ? "0" : std::string(whole)) + std::string(frac)};
        Int pow10 = 1;
        for (size_t i = 0; i < frac.size(); ++i)
            pow10 *= 10;
        Rat r(scaled, pow10);
        return negative ? -r : r;
    }

    if (!all_digits(s))
        bad_number(text);
    Rat r{Int{std::string(s)}};
    return negative ? -r : r;
}

std::string format_rational(const Rat& value) {
    return value.str();
}

std::string format_rational_decimal(const Rat& value) {
    Int den = denominator(value);
    int twos = 0, fives = 0;
    while (den % 2 == 0) {
        den /= 2;
        ++twos;
    }
    while (den % 5 == 0) {
        den /= 5;
        ++fives;
    }
    if (den != 1)
        return format_rational(value);

    int digits = std::max(twos, fives);
    if (digits == 0)
        return format_rational(value);

    Int scale = 1;
    for (int i = 0; i < digits; ++i)
        scale *= 10;
    Int scaled = numerator(value) * (scale / denominator(value));
    bool negative = scaled < 0;
    std::string body = Int(abs(scaled)).str();
    if (static_cast<int>(body.size()) <= digits)
        body.insert(body.begin(), digits + 1 - body.size(), '0');
    body.insert(body.size() - digits, ".");
    while (body.back() == '0')
        body.pop_back();
    if (body.back() == '.')
        body.pop_back();
    return negative ? "-" + body : body;
}

} // namespace mtk
