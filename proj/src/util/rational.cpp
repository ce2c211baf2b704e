#include "avc/util/rational.hpp"

#include <cctype>

namespace avc {

namespace {

using boost::multiprecision::cpp_int;

cpp_int pow10(int n) {
    cpp_int r = 1;
    for (int i = 0; i < n; ++i) r *= 10;
    return r;
}

}  // namespace

std::optional<Rational> parse_decimal(std::string_view text) {
    bool negative = false;
    std::size_t i = 0;
    if (i < text.size() && text[i] == '-') {
        negative = true;
        ++i;
    }
    cpp_int whole = 0;
    std::size_t digits = 0;
    for (; i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])); ++i, ++digits)
        whole = whole * 10 + (text[i] - '0');
    if (digits == 0) return std::nullopt;
    cpp_int frac = 0;
    int frac_digits = 0;
    if (i < text.size() && text[i] == '.') {
        ++i;
        for (; i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])); ++i, ++frac_digits)
            frac = frac * 10 + (text[i] - '0');
        if (frac_digits == 0) return std::nullopt;
    }
    if (i != text.size()) return std::nullopt;
    Rational value = Rational(whole) + Rational(frac, pow10(frac_digits));
    return negative ? Rational(-value) : value;
}

bool is_finite_decimal(const Rational& value) {
    cpp_int den = boost::multiprecision::denominator(value);
    while (den % 2 == 0) den /= 2;
    while (den % 5 == 0) den /= 5;
    return den == 1;
}

std::string to_decimal_string(const Rational& value) {
    const cpp_int num = boost::multiprecision::numerator(value);
    const cpp_int den = boost::multiprecision::denominator(value);
    if (den == 1) return num.str();
    if (!is_finite_decimal(value)) return num.str() + "/" + den.str();

    cpp_int abs_num = num < 0 ? cpp_int(-num) : num;
    cpp_int whole = abs_num / den;
    cpp_int rem = abs_num % den;
    std::string frac;
    while (rem != 0) {
        rem *= 10;
        frac.push_back(static_cast<char>('0' + static_cast<int>(rem / den)));
        rem %= den;
    }
    return (num < 0 ? "-" : "") + whole.str() + "." + frac;
}

std::string to_real_literal(const Rational& value) {
    std::string s = to_decimal_string(value);
    if (s.find_first_of("./") == std::string::npos) s += ".0";
    return s;
}

Rational round_half_away(const Rational& value, int digits) {
    const cpp_int scale = pow10(digits);
    const Rational scaled = value * scale;
    const cpp_int num = boost::multiprecision::numerator(scaled);
    const cpp_int den = boost::multiprecision::denominator(scaled);
    cpp_int abs_num = num < 0 ? cpp_int(-num) : num;
    cpp_int q = abs_num / den;
    if ((abs_num % den) * 2 >= den) q += 1;
    if (num < 0) q = -q;
    return Rational(q, scale);
}

}  // namespace avc
