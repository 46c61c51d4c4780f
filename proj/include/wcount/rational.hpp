#pragma once

// Exact number types shared by every module: arbitrary-precision integers and
// rationals (GMP-backed) and dyadic rationals m / 2^e.

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace wcount {

using BigInt = mpz_class;
using BigRational = mpq_class;

/// Builds num/den in lowest terms with a positive denominator.
BigRational make_rational(const BigInt& num, const BigInt& den);

/// Parses "a", "-a", "a/b" (b != 0). Throws std::invalid_argument.
BigRational parse_rational(std::string_view text);

/// "a/b", or "a" when the denominator is 1.
std::string to_string(const BigRational& q);
std::string to_string(const BigInt& z);

/// Decimal rendering for display only.
std::string to_decimal(const BigRational& q, unsigned digits = 12);

/// Number of bits of |z|; 1 for zero.
std::size_t bit_length(const BigInt& z);

/// Bits needed to write q as a reduced fraction: bits(|num|) + bits(den).
std::size_t encoding_bits(const BigRational& q);

BigInt pow2(std::uint64_t e);

/// floor(q * 2^b)
BigInt floor_scaled(const BigRational& q, std::uint64_t b);

/// ceil(q * 2^b)
BigInt ceil_scaled(const BigRational& q, std::uint64_t b);

/// Nearest integer to n/d (d > 0), ties toward -infinity.
BigInt round_nearest(const BigInt& n, const BigInt& d);

/// Nearest integer to q, ties toward -infinity.
BigInt round_nearest(const BigRational& q);

/// Nearest integer to n / 2^s, ties toward -infinity.
BigInt round_shift(const BigInt& n, std::uint64_t s);

BigInt floor(const BigRational& q);
BigInt ceil(const BigRational& q);
BigRational abs(const BigRational& q);
int sign(const BigRational& q);

/// Dyadic rational mantissa / 2^exponent, kept with odd mantissa or exponent 0.
class Dyadic {
public:
    Dyadic() = default;
    Dyadic(BigInt mantissa, std::uint64_t exponent);

    const BigInt& mantissa() const { return mantissa_; }
    std::uint64_t exponent() const { return exponent_; }

    BigRational to_rational() const;

    /// "m/2^e"
    std::string str() const;

    friend bool operator==(const Dyadic& a, const Dyadic& b)
    {
        return a.exponent_ == b.exponent_ && a.mantissa_ == b.mantissa_;
    }

private:
    BigInt mantissa_ = 0;
    std::uint64_t exponent_ = 0;
};

}  // namespace wcount
