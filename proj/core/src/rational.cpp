#include "parampac/rational.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <string>

#include "parampac/error.hpp"

namespace parampac {

std::string_view errc_name(Errc code) noexcept {
    switch (code) {
        case Errc::Parse: return "ParseError";
        case Errc::Semantic: return "SemanticError";
        case Errc::BoundError: return "BoundError";
        case Errc::UnknownParam: return "UnknownParam";
        case Errc::MissingParam: return "MissingParam";
        case Errc::OutOfBox: return "OutOfBox";
        case Errc::RowSumViolation: return "RowSumViolation";
        case Errc::NegativeProbability: return "NegativeProbability";
        case Errc::DivisionByZero: return "DivisionByZero";
        case Errc::IntervalDivisionByZero: return "IntervalDivisionByZero";
        case Errc::ZeroDenominator: return "ZeroDenominator";
        case Errc::MissingReward: return "MissingReward";
        case Errc::SingularSystem: return "SingularSystem";
        case Errc::TooLarge: return "TooLarge";
        case Errc::SymbolicZeroDenominator: return "SymbolicZeroDenominator";
        case Errc::NotAlmostSure: return "NotAlmostSure";
        case Errc::BadStatParam: return "BadStatParam";
        case Errc::TooFewSamples: return "TooFewSamples";
        case Errc::LpFailure: return "LpFailure";
        case Errc::IterationLimit: return "IterationLimit";
        case Errc::OracleFailure: return "OracleFailure";
        case Errc::BadNorm: return "BadNorm";
        case Errc::QuadratureFailure: return "QuadratureFailure";
        case Errc::CenterSingular: return "CenterSingular";
        case Errc::InvalidArgument: return "InvalidArgument";
        case Errc::Io: return "IoError";
    }
    return "Error";
}

ParseError::ParseError(Errc code, std::size_t line, std::size_t column, std::string expected,
                       std::string found)
    : Error(code, std::to_string(line) + ":" + std::to_string(column) + ": expected " + expected +
                      ", found " + (found.empty() ? std::string("end of input") : "'" + found + "'")),
      line_(line),
      column_(column),
      expected_(std::move(expected)),
      found_(std::move(found)) {}

Rational rational_from_decimal(std::string_view text) {
    auto fail = [&] {
        throw Error(Errc::InvalidArgument, "malformed decimal literal '" + std::string(text) + "'");
    };
    std::size_t i = 0;
    bool negative = false;
    if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
        negative = text[i] == '-';
        ++i;
    }
    std::string digits;
    long scale = 0;  // value = digits * 10^(-scale)
    bool any_digit = false;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
        digits.push_back(text[i++]);
        any_digit = true;
    }
    if (i < text.size() && text[i] == '.') {
        ++i;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
            digits.push_back(text[i++]);
            ++scale;
            any_digit = true;
        }
    }
    if (!any_digit) fail();
    if (i < text.size() && (text[i] == 'e' || text[i] == 'E')) {
        ++i;
        bool exp_negative = false;
        if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
            exp_negative = text[i] == '-';
            ++i;
        }
        long exponent = 0;
        bool exp_digit = false;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
            exponent = exponent * 10 + (text[i++] - '0');
            exp_digit = true;
            if (exponent > 100000) fail();
        }
        if (!exp_digit) fail();
        scale += exp_negative ? exponent : -exponent;
    }
    if (i != text.size()) fail();

    mpz_class numerator(digits.empty() ? std::string("0") : digits, 10);
    mpz_class power;
    mpz_ui_pow_ui(power.get_mpz_t(), 10, static_cast<unsigned long>(scale < 0 ? -scale : scale));
    Rational r;
    if (scale >= 0) {
        r = Rational(numerator, power);
    } else {
        r = Rational(numerator * power, 1);
    }
    r.canonicalize();
    if (negative) r = -r;
    return r;
}

double to_double(const Rational& r) {
    const double t = r.get_d();
    if (Rational(t) == r || std::isinf(t)) return t;
    const double away = std::nextafter(t, sgn(r) > 0 ? INFINITY : -INFINITY);
    if (std::isinf(away)) return t;
    const Rational dt = abs(r - Rational(t));
    const Rational da = abs(Rational(away) - r);
    if (dt != da) return dt < da ? t : away;
    std::int64_t bits = 0;
    std::memcpy(&bits, &t, sizeof bits);
    return (bits & 1) == 0 ? t : away;
}

std::string to_string(const Rational& r) {
    if (r.get_den() == 1) return r.get_num().get_str();
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

std::string to_decimal_string(const Rational& r) {
    if (r.get_den() == 1) return r.get_num().get_str();
    mpz_class den = r.get_den();
    unsigned twos = 0;
    unsigned fives = 0;
    while (mpz_divisible_ui_p(den.get_mpz_t(), 2)) {
        den /= 2;
        ++twos;
    }
    while (mpz_divisible_ui_p(den.get_mpz_t(), 5)) {
        den /= 5;
        ++fives;
    }
    if (den != 1) return to_string(r);

    unsigned digits = std::max(twos, fives);
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, digits);
    mpz_class scaled = r.get_num() * (scale / r.get_den());
    bool negative = scaled < 0;
    if (negative) scaled = -scaled;
    std::string s = scaled.get_str();
    if (s.size() <= digits) s.insert(0, digits - s.size() + 1, '0');
    s.insert(s.size() - digits, ".");
    return negative ? "-" + s : s;
}

}  // namespace parampac

namespace parampac {

std::string format_double(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    std::array<char, 64> buf{};
    auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
    (void)ec;
    return std::string(buf.data(), end);
}

}  // namespace parampac
