#pragma once

// Certified dyadic brackets for the few transcendental constants the library
// compares against. Every bracket is [lo, hi] with lo <= true value <= hi and
// both ends multiples of 2^-frac_bits.

#include "wcount/rational.hpp"

#include <cstdint>

namespace wcount {

struct Bracket {
    BigRational lo;
    BigRational hi;

    bool contains(const BigRational& q) const { return lo <= q && q <= hi; }
    BigRational width() const { return hi - lo; }
};

/// atanh(z) for rational 0 <= z <= 1/3.
Bracket atanh_bracket(const BigRational& z, std::uint64_t frac_bits);

/// ln(x) for integer x >= 1.
Bracket ln_bracket(const BigInt& x, std::uint64_t frac_bits);

/// exp(y) for rational y >= 0.
Bracket exp_bracket(const BigRational& y, std::uint64_t frac_bits);

/// exp(-y) for rational y >= 0.
Bracket exp_neg_bracket(const BigRational& y, std::uint64_t frac_bits);

/// Euler's number.
Bracket e_bracket(std::uint64_t frac_bits);

}  // namespace wcount
