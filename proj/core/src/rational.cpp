#include "declmine/rational.hpp"

#include <cctype>
#include <cstdlib>
#include <stdexcept>

namespace declmine {

Rational parse_decimal(std::string_view text) {
    std::size_t i = 0;
    bool negative = false;
    if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
        negative = text[i] == '-';
        ++i;
    }
    std::int64_t integer = 0;
    std::int64_t numerator = 0;
    std::int64_t denominator = 1;
    bool any_digit = false;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
        integer = integer * 10 + (text[i] - '0');
        any_digit = true;
        ++i;
    }
    if (i < text.size() && text[i] == '.') {
        ++i;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
            if (denominator > 100'000'000'000'000'000LL)
                throw std::invalid_argument("decimal literal has too many digits: '" + std::string(text) + "'");
            numerator = numerator * 10 + (text[i] - '0');
            denominator *= 10;
            any_digit = true;
            ++i;
        }
    }
    if (!any_digit || i != text.size())
        throw std::invalid_argument("not a decimal literal: '" + std::string(text) + "'");
    Rational value = Rational(integer) + Rational(numerator, denominator);
    return negative ? -value : value;
}

std::string to_decimal_string(const Rational& value, int significant_digits) {
    if (value.numerator() == 0)
        return "0";

    std::int64_t num = value.numerator();
    std::int64_t den = value.denominator();
    std::string sign;
    if (num < 0) {
        sign = "-";
        num = -num;
    }

    std::string int_part = std::to_string(num / den);
    std::int64_t rem = num % den;

    int remaining = significant_digits;
    if (int_part != "0")
        remaining -= static_cast<int>(int_part.size());

    std::string frac;
    bool significant_started = int_part != "0";
    while (rem != 0 && remaining > 0) {
        rem *= 10;
        std::int64_t digit = rem / den;
        rem %= den;
        frac.push_back(static_cast<char>('0' + digit));
        if (digit != 0)
            significant_started = true;
        if (significant_started)
            --remaining;
    }

    // Round half up on the first dropped digit, propagating carries.
    if (rem != 0 && rem * 2 >= den) {
        int pos = static_cast<int>(frac.size()) - 1;
        while (pos >= 0) {
            if (frac[pos] != '9') {
                ++frac[pos];
                break;
            }
            frac[pos] = '0';
            --pos;
        }
        if (pos < 0) {
            // Carry crossed the decimal point.
            std::int64_t carried = std::strtoll(int_part.c_str(), nullptr, 10) + 1;
            int_part = std::to_string(carried);
        }
    }

    while (!frac.empty() && frac.back() == '0')
        frac.pop_back();

    if (frac.empty())
        return sign + int_part;
    return sign + int_part + "." + frac;
}

} // namespace declmine
