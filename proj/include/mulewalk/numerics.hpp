#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <type_traits>

#include <gmpxx.h>

namespace mulewalk {

/// Arithmetic used by a computation. Exact works on GMP rationals, Float on doubles.
enum class NumberMode { Exact, Float };

using Rational = mpq_class;
using Integer = mpz_class;

template <NumberMode M>
using Number = std::conditional_t<M == NumberMode::Exact, Rational, double>;

template <class T>
inline constexpr NumberMode mode_of = std::is_same_v<T, Rational> ? NumberMode::Exact : NumberMode::Float;

std::string_view to_string(NumberMode mode);
NumberMode parse_number_mode(std::string_view text);

/// Parses "1/220", "0.01", "3" into an exact rational. Throws std::invalid_argument.
Rational parse_rational(std::string_view text);

/// A probability, held exactly; converted into the active number mode on use.
class Prob {
public:
    Prob() = default;
    explicit Prob(Rational value);
    static Prob from_string(std::string_view text) { return Prob(parse_rational(text)); }

    const Rational& exact() const { return value_; }

    template <NumberMode M>
    Number<M> as() const {
        if constexpr (M == NumberMode::Exact)
            return value_;
        else
            return value_.get_d();
    }

    friend bool operator==(const Prob& a, const Prob& b) { return a.value_ == b.value_; }

private:
    Rational value_{0};
};

double to_double(double x);
double to_double(const Rational& x);

/// Canonical text of a rational ("3/4", "1", "0").
std::string to_string(const Rational& x);

/// n!, always exact.
Integer factorial(std::uint64_t n);

/// C(n, k); k > n yields 0. Float mode throws std::range_error if the value does not fit a double.
template <NumberMode M>
Number<M> binomial(std::uint64_t n, std::uint64_t k);

/// C(a, b) / C(n, k) without materialising either coefficient.
///
/// Float mode multiplies the factors of both products in long double with
/// exponent rescaling, so the result never overflows and each factor costs
/// one rounding. Requires b <= a and k <= n (throws std::domain_error otherwise).
template <NumberMode M>
Number<M> binomial_ratio(std::uint64_t a, std::uint64_t b, std::uint64_t n, std::uint64_t k);

/// base^exponent with 0^0 = 1.
template <NumberMode M>
Number<M> power(const Number<M>& base, std::uint64_t exponent);

/// Rounds half-up to `decimals` places and formats with exactly that many digits.
std::string format_fixed(double x, int decimals);
std::string format_fixed(const Rational& x, int decimals);

/// At least 10 significant digits, locale independent.
std::string format_precise(double x);

} // namespace mulewalk
