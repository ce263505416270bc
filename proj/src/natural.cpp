#include "rhofactor/natural.hpp"

#include <ostream>

namespace rhofactor {

Natural::Natural(std::uint64_t v) {
    // mpz_class has no portable uint64_t constructor on every LP model.
    mpz_import(value_.get_mpz_t(), 1, 1, sizeof(v), 0, 0, &v);
}

Natural Natural::parse(std::string_view decimal) {
    if (decimal.empty()) {
        throw ParseError("empty number");
    }
    for (const char ch : decimal) {
        if (ch < '0' || ch > '9') {
            throw ParseError("not a non-negative decimal integer: '" + std::string(decimal) + "'");
        }
    }
    mpz_class v;
    if (v.set_str(std::string(decimal), 10) != 0) {
        throw ParseError("not a non-negative decimal integer: '" + std::string(decimal) + "'");
    }
    return Natural(std::move(v));
}

std::string Natural::to_string() const { return value_.get_str(10); }

Natural Natural::pow10(unsigned exponent) {
    mpz_class v;
    mpz_ui_pow_ui(v.get_mpz_t(), 10, exponent);
    return Natural(std::move(v));
}

bool Natural::fits_u64() const { return bit_length() <= 64; }

std::uint64_t Natural::to_u64() const {
    if (!fits_u64()) {
        throw std::overflow_error("value exceeds 64 bits: " + to_string());
    }
    std::uint64_t out = 0;
    mpz_export(&out, nullptr, 1, sizeof(out), 0, 0, value_.get_mpz_t());
    return out;
}

std::size_t Natural::bit_length() const {
    return is_zero() ? 0 : mpz_sizeinbase(value_.get_mpz_t(), 2);
}

std::size_t Natural::decimal_digits() const {
    // mpz_sizeinbase may overshoot by one for base 10.
    return is_zero() ? 1 : value_.get_str(10).size();
}

Natural& Natural::operator+=(const Natural& rhs) {
    value_ += rhs.value_;
    return *this;
}

Natural& Natural::operator-=(const Natural& rhs) {
    if (value_ < rhs.value_) {
        throw std::underflow_error("Natural subtraction below zero");
    }
    value_ -= rhs.value_;
    return *this;
}

Natural& Natural::operator*=(const Natural& rhs) {
    value_ *= rhs.value_;
    return *this;
}

Natural& Natural::operator/=(const Natural& rhs) {
    if (rhs.is_zero()) {
        throw ModulusZeroError("division by zero");
    }
    mpz_fdiv_q(value_.get_mpz_t(), value_.get_mpz_t(), rhs.value_.get_mpz_t());
    return *this;
}

Natural& Natural::operator%=(const Natural& rhs) {
    if (rhs.is_zero()) {
        throw ModulusZeroError("modulus is zero");
    }
    mpz_mod(value_.get_mpz_t(), value_.get_mpz_t(), rhs.value_.get_mpz_t());
    return *this;
}

bool Natural::divisible_by(const Natural& divisor) const {
    if (divisor.is_zero()) {
        return false;
    }
    return mpz_divisible_p(value_.get_mpz_t(), divisor.value_.get_mpz_t()) != 0;
}

std::ostream& operator<<(std::ostream& os, const Natural& n) { return os << n.to_string(); }

}  // namespace rhofactor
