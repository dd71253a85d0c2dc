#include "mulewalk/numerics.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

namespace mulewalk {

std::string_view to_string(NumberMode mode) {
    return mode == NumberMode::Exact ? "exact" : "float";
}

NumberMode parse_number_mode(std::string_view text) {
    if (text == "exact")
        return NumberMode::Exact;
    if (text == "float")
        return NumberMode::Float;
    throw std::invalid_argument("unknown number mode '" + std::string(text) + "' (expected exact|float)");
}

namespace {

bool all_digits(std::string_view s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c) != 0; });
}

} // namespace

Rational parse_rational(std::string_view text) {
    const std::string original(text);
    auto fail = [&]() -> Rational { throw std::invalid_argument("not a rational number: '" + original + "'"); };

    bool negative = false;
    if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
        negative = text.front() == '-';
        text.remove_prefix(1);
    }

    Rational value;
    if (const auto slash = text.find('/'); slash != std::string_view::npos) {
        const auto num = text.substr(0, slash);
        const auto den = text.substr(slash + 1);
        if (!all_digits(num) || !all_digits(den))
            return fail();
        const Integer d{std::string(den)};
        if (d == 0)
            throw std::invalid_argument("zero denominator in '" + original + "'");
        value = Rational(Integer{std::string(num)}, d);
    } else if (const auto dot = text.find('.'); dot != std::string_view::npos) {
        auto whole = text.substr(0, dot);
        auto frac = text.substr(dot + 1);
        if ((whole.empty() && frac.empty()) || (!whole.empty() && !all_digits(whole)) || (!frac.empty() && !all_digits(frac)))
            return fail();
        Integer scale;
        mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
        const Integer digits(std::string(whole.empty() ? "0" : whole) + std::string(frac));
        value = Rational(digits, scale);
    } else {
        if (!all_digits(text))
            return fail();
        value = Rational(Integer(std::string(text)));
    }
    value.canonicalize();
    return negative ? Rational(-value) : value;
}

Prob::Prob(Rational value) : value_(std::move(value)) {
    value_.canonicalize();
    if (value_ < 0 || value_ > 1)
        throw std::invalid_argument("probability out of [0,1]: " + to_string(value_));
}

double to_double(double x) { return x; }
double to_double(const Rational& x) { return x.get_d(); }

std::string to_string(const Rational& x) { return x.get_str(); }

Integer factorial(std::uint64_t n) {
    Integer result;
    mpz_fac_ui(result.get_mpz_t(), n);
    return result;
}

namespace {

Integer exact_binomial(std::uint64_t n, std::uint64_t k) {
    Integer result;
    mpz_bin_uiui(result.get_mpz_t(), n, k);
    return result;
}

// Running product kept as mantissa * 2^exponent.
struct ScaledProduct {
    long double mantissa = 1.0L;
    long exponent = 0;

    void times(long double factor) {
        mantissa *= factor;
        int e = 0;
        mantissa = std::frexp(mantissa, &e);
        exponent += e;
    }
    long double value() const { return std::ldexp(mantissa, static_cast<int>(exponent)); }
};

// Multiplies C(n, k) (or its inverse) into the product, one factor at a time.
void accumulate_binomial(ScaledProduct& acc, std::uint64_t n, std::uint64_t k, bool invert) {
    k = std::min(k, n - k);
    for (std::uint64_t i = 1; i <= k; ++i) {
        const auto top = static_cast<long double>(n - k + i);
        const auto bottom = static_cast<long double>(i);
        acc.times(invert ? bottom / top : top / bottom);
    }
}

} // namespace

template <>
Rational binomial<NumberMode::Exact>(std::uint64_t n, std::uint64_t k) {
    if (k > n)
        return Rational(0);
    return Rational(exact_binomial(n, k));
}

template <>
double binomial<NumberMode::Float>(std::uint64_t n, std::uint64_t k) {
    if (k > n)
        return 0.0;
    ScaledProduct acc;
    accumulate_binomial(acc, n, k, false);
    const long double v = acc.value();
    if (!(v <= static_cast<long double>(std::numeric_limits<double>::max())))
        throw std::range_error("C(" + std::to_string(n) + "," + std::to_string(k) +
                               ") exceeds double range; use binomial_ratio");
    return static_cast<double>(v);
}

template <>
Rational binomial_ratio<NumberMode::Exact>(std::uint64_t a, std::uint64_t b, std::uint64_t n, std::uint64_t k) {
    if (b > a || k > n)
        throw std::domain_error("binomial_ratio requires b <= a and k <= n");
    Rational r(exact_binomial(a, b), exact_binomial(n, k));
    r.canonicalize();
    return r;
}

template <>
double binomial_ratio<NumberMode::Float>(std::uint64_t a, std::uint64_t b, std::uint64_t n, std::uint64_t k) {
    if (b > a || k > n)
        throw std::domain_error("binomial_ratio requires b <= a and k <= n");
    ScaledProduct acc;
    accumulate_binomial(acc, a, b, false);
    accumulate_binomial(acc, n, k, true);
    return static_cast<double>(acc.value());
}

template <>
Rational power<NumberMode::Exact>(const Rational& base, std::uint64_t exponent) {
    Integer num, den;
    mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), exponent);
    mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), exponent);
    Rational r(num, den);
    r.canonicalize();
    return r;
}

template <>
double power<NumberMode::Float>(const double& base, std::uint64_t exponent) {
    return std::pow(base, static_cast<double>(exponent));
}

std::string format_fixed(double x, int decimals) {
    const double scale = std::pow(10.0, decimals);
    // The nudge lets exact decimal ties (e.g. 0.49995) round up despite binary representation error.
    const double scaled = std::floor(std::fabs(x) * scale + 0.5 + 1e-7);
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, std::copysign(scaled / scale, x));
    return buf;
}

std::string format_fixed(const Rational& x, int decimals) {
    Integer scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(decimals));
    const bool negative = x < 0;
    const Rational magnitude = negative ? Rational(-x) : x;
    // floor(|x| * 10^d + 1/2)
    const Integer twice = 2 * magnitude.get_num() * scale + magnitude.get_den();
    Integer rounded;
    mpz_fdiv_q(rounded.get_mpz_t(), twice.get_mpz_t(), Integer(2 * magnitude.get_den()).get_mpz_t());

    std::string digits = rounded.get_str();
    if (decimals > 0) {
        if (digits.size() <= static_cast<std::size_t>(decimals))
            digits.insert(0, static_cast<std::size_t>(decimals) + 1 - digits.size(), '0');
        digits.insert(digits.size() - static_cast<std::size_t>(decimals), ".");
    }
    return (negative && rounded != 0 ? "-" : "") + digits;
}

std::string format_precise(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

} // namespace mulewalk
