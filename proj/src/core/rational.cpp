#include "wcount/rational.hpp"

#include <stdexcept>

namespace wcount {

BigRational make_rational(const BigInt& num, const BigInt& den)
{
    if (den == 0) {
        throw std::invalid_argument("zero denominator");
    }
    BigRational q(num, den);
    q.canonicalize();
    return q;
}

BigRational parse_rational(std::string_view text)
{
    auto valid_int = [](std::string_view s) {
        std::size_t i = 0;
        if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
            i = 1;
        }
        if (i == s.size()) {
            return false;
        }
        for (; i < s.size(); ++i) {
            if (s[i] < '0' || s[i] > '9') {
                return false;
            }
        }
        return true;
    };
    auto to_int = [](std::string_view s) {
        if (!s.empty() && s[0] == '+') {
            s.remove_prefix(1);
        }
        return BigInt(std::string(s), 10);
    };

    auto slash = text.find('/');
    if (slash == std::string_view::npos) {
        if (!valid_int(text)) {
            throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
        }
        return BigRational(to_int(text));
    }
    auto num = text.substr(0, slash);
    auto den = text.substr(slash + 1);
    if (!valid_int(num) || !valid_int(den) || den[0] == '-') {
        throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
    }
    return make_rational(to_int(num), to_int(den));
}

std::string to_string(const BigRational& q) { return q.get_str(10); }

std::string to_string(const BigInt& z) { return z.get_str(10); }

std::string to_decimal(const BigRational& q, unsigned digits)
{
    BigInt scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, digits);
    BigInt scaled = round_nearest(BigRational(q * scale));
    bool negative = scaled < 0;
    BigInt mag = negative ? BigInt(-scaled) : scaled;
    std::string s = mag.get_str(10);
    if (s.size() <= digits) {
        s.insert(0, digits + 1 - s.size(), '0');
    }
    s.insert(s.size() - digits, ".");
    if (negative) {
        s.insert(0, "-");
    }
    return s;
}

std::size_t bit_length(const BigInt& z) { return mpz_sizeinbase(z.get_mpz_t(), 2); }

std::size_t encoding_bits(const BigRational& q)
{
    return bit_length(q.get_num()) + bit_length(q.get_den());
}

BigInt pow2(std::uint64_t e)
{
    BigInt r;
    mpz_ui_pow_ui(r.get_mpz_t(), 2, e);
    return r;
}

BigInt floor_scaled(const BigRational& q, std::uint64_t b)
{
    BigInt n = q.get_num();
    mpz_mul_2exp(n.get_mpz_t(), n.get_mpz_t(), b);
    BigInt r;
    mpz_fdiv_q(r.get_mpz_t(), n.get_mpz_t(), q.get_den_mpz_t());
    return r;
}

BigInt ceil_scaled(const BigRational& q, std::uint64_t b)
{
    BigInt n = q.get_num();
    mpz_mul_2exp(n.get_mpz_t(), n.get_mpz_t(), b);
    BigInt r;
    mpz_cdiv_q(r.get_mpz_t(), n.get_mpz_t(), q.get_den_mpz_t());
    return r;
}

BigInt round_nearest(const BigInt& n, const BigInt& d)
{
    // k with k - 1/2 < n/d <= k + 1/2, i.e. ceil((2n - d) / 2d).
    BigInt num = 2 * n - d;
    BigInt den = 2 * d;
    BigInt r;
    mpz_cdiv_q(r.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    return r;
}

BigInt round_nearest(const BigRational& q) { return round_nearest(q.get_num(), q.get_den()); }

BigInt round_shift(const BigInt& n, std::uint64_t s)
{
    if (s == 0) {
        return n;
    }
    return round_nearest(n, pow2(s));
}

BigInt floor(const BigRational& q)
{
    BigInt r;
    mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

BigInt ceil(const BigRational& q)
{
    BigInt r;
    mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

BigRational abs(const BigRational& q) { return q < 0 ? BigRational(-q) : q; }

int sign(const BigRational& q) { return sgn(q); }

Dyadic::Dyadic(BigInt mantissa, std::uint64_t exponent)
    : mantissa_(std::move(mantissa)), exponent_(exponent)
{
    if (mantissa_ == 0) {
        exponent_ = 0;
        return;
    }
    auto zeros = mpz_scan1(mantissa_.get_mpz_t(), 0);
    auto shift = std::min<std::uint64_t>(zeros, exponent_);
    if (shift > 0) {
        mpz_fdiv_q_2exp(mantissa_.get_mpz_t(), mantissa_.get_mpz_t(), shift);
        exponent_ -= shift;
    }
}

BigRational Dyadic::to_rational() const { return make_rational(mantissa_, pow2(exponent_)); }

std::string Dyadic::str() const
{
    return mantissa_.get_str(10) + "/2^" + std::to_string(exponent_);
}

}  // namespace wcount
