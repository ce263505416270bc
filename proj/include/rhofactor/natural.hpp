#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace rhofactor {

/// Raised when decimal text does not describe a non-negative integer.
class ParseError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Raised by operations whose modulus argument is zero.
class ModulusZeroError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/**
 * Arbitrary-precision non-negative integer.
 *
 * Thin value type over a GMP integer. Every arithmetic operation keeps the
 * value non-negative; subtraction that would go below zero throws
 * std::underflow_error (use abs_diff for |a - b|).
 *
 * The only external text format is base-10 with no sign and no whitespace.
 */
class Natural {
public:
    Natural() = default;
    Natural(std::uint64_t v);  // NOLINT(google-explicit-constructor)

    /// Parses a decimal string. Leading zeros are accepted on input.
    static Natural parse(std::string_view decimal);

    /// Canonical decimal rendering, no leading zeros except "0".
    std::string to_string() const;

    /// 10^exponent
    static Natural pow10(unsigned exponent);

    bool is_zero() const { return sgn(value_) == 0; }
    bool is_one() const { return value_ == 1; }
    bool is_even() const { return mpz_even_p(value_.get_mpz_t()) != 0; }
    bool fits_u64() const;
    std::uint64_t to_u64() const;  // throws std::overflow_error if !fits_u64()

    std::size_t bit_length() const;
    std::size_t decimal_digits() const;

    Natural& operator+=(const Natural& rhs);
    Natural& operator-=(const Natural& rhs);
    Natural& operator*=(const Natural& rhs);
    Natural& operator/=(const Natural& rhs);
    Natural& operator%=(const Natural& rhs);

    friend Natural operator+(Natural a, const Natural& b) { return a += b; }
    friend Natural operator-(Natural a, const Natural& b) { return a -= b; }
    friend Natural operator*(Natural a, const Natural& b) { return a *= b; }
    friend Natural operator/(Natural a, const Natural& b) { return a /= b; }
    friend Natural operator%(Natural a, const Natural& b) { return a %= b; }

    /// True iff divisor != 0 and divisor | *this.
    bool divisible_by(const Natural& divisor) const;

    friend bool operator==(const Natural& a, const Natural& b) { return cmp(a.value_, b.value_) == 0; }
    friend std::strong_ordering operator<=>(const Natural& a, const Natural& b) {
        const int c = cmp(a.value_, b.value_);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

    /// GMP interop for hot loops. Callers must keep the value non-negative.
    mpz_class& mpz() { return value_; }
    const mpz_class& mpz() const { return value_; }

private:
    explicit Natural(mpz_class v) : value_(std::move(v)) {}

    mpz_class value_{0};
};

std::ostream& operator<<(std::ostream& os, const Natural& n);

}  // namespace rhofactor
