#include "wcount/enclosure.hpp"

#include <stdexcept>

namespace wcount {

namespace {

BigRational scaled(const BigInt& n, std::uint64_t frac_bits) { return make_rational(n, pow2(frac_bits)); }

}  // namespace

Bracket atanh_bracket(const BigRational& z, std::uint64_t frac_bits)
{
    if (z < 0 || z * 3 > 1) {
        throw std::domain_error("atanh_bracket needs 0 <= z <= 1/3");
    }
    // sum_j z^(2j+1)/(2j+1); once z^(2j+1) < 2^-F the tail is below
    // (9/8) z^(2j+1) / 3 < 2^-F, covered by one ulp on the upper side.
    BigInt lo = 0;
    BigInt hi = 0;
    const BigRational z2 = z * z;
    BigRational power = z;
    const BigRational ulp = scaled(1, frac_bits);
    for (std::uint64_t j = 0;; ++j) {
        BigRational term = power / BigRational(2 * j + 1);
        lo += floor_scaled(term, frac_bits);
        hi += ceil_scaled(term, frac_bits);
        power *= z2;
        if (power < ulp) {
            hi += 1;
            break;
        }
    }
    return {scaled(lo, frac_bits), scaled(hi, frac_bits)};
}

Bracket ln_bracket(const BigInt& x, std::uint64_t frac_bits)
{
    if (x < 1) {
        throw std::domain_error("ln_bracket needs x >= 1");
    }
    const std::uint64_t guard = frac_bits + 8;
    // ln x = k ln 2 + 2 atanh((x - 2^k)/(x + 2^k)), with x / 2^k in [1, 2).
    const std::uint64_t k = bit_length(x) - 1;
    const BigInt base = pow2(k);
    Bracket ln2 = atanh_bracket(make_rational(1, 3), guard);
    Bracket rest = atanh_bracket(make_rational(x - base, x + base), guard);
    BigRational lo = 2 * (BigRational(k) * ln2.lo + rest.lo);
    BigRational hi = 2 * (BigRational(k) * ln2.hi + rest.hi);
    return {scaled(floor_scaled(lo, frac_bits), frac_bits), scaled(ceil_scaled(hi, frac_bits), frac_bits)};
}

Bracket exp_bracket(const BigRational& y, std::uint64_t frac_bits)
{
    if (y < 0) {
        throw std::domain_error("exp_bracket needs y >= 0");
    }
    const std::uint64_t guard = frac_bits + 8;
    BigInt lo = 0;
    BigInt hi = 0;
    BigRational term = 1;
    const BigRational ulp = scaled(1, guard);
    for (std::uint64_t j = 0;; ++j) {
        lo += floor_scaled(term, guard);
        hi += ceil_scaled(term, guard);
        BigRational next = term * y / BigRational(j + 1);
        // Once the ratio y/(j+2) is at most 1/2 the tail is below 2 * next.
        if (next < ulp && y * 2 <= BigRational(j + 2)) {
            hi += ceil_scaled(BigRational(2 * next), guard);
            break;
        }
        term = next;
    }
    BigRational l = scaled(lo, guard);
    BigRational h = scaled(hi, guard);
    return {scaled(floor_scaled(l, frac_bits), frac_bits), scaled(ceil_scaled(h, frac_bits), frac_bits)};
}

Bracket exp_neg_bracket(const BigRational& y, std::uint64_t frac_bits)
{
    Bracket up = exp_bracket(y, frac_bits + 8 + bit_length(ceil(y)) * 2);
    BigRational lo = 1 / up.hi;
    BigRational hi = 1 / up.lo;
    return {scaled(floor_scaled(lo, frac_bits), frac_bits), scaled(ceil_scaled(hi, frac_bits), frac_bits)};
}

Bracket e_bracket(std::uint64_t frac_bits) { return exp_bracket(1, frac_bits); }

}  // namespace wcount
