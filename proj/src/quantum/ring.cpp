#include "wcount/ring.hpp"

#include <sstream>

namespace wcount {

QuadraticRational::QuadraticRational(BigRational alpha, BigRational beta)
    : alpha_(std::move(alpha)), beta_(std::move(beta))
{
}

int QuadraticRational::sign() const
{
    const int sa = wcount::sign(alpha_);
    const int sb = wcount::sign(beta_);
    if (sb == 0 || sa == sb) {
        return sa != 0 ? sa : sb;
    }
    if (sa == 0) {
        return sb;
    }
    // Opposite signs: the larger of alpha^2 and 2 beta^2 wins (they are never equal).
    return alpha_ * alpha_ > 2 * beta_ * beta_ ? sa : sb;
}

QuadraticRational operator+(const QuadraticRational& x, const QuadraticRational& y)
{
    return {x.alpha_ + y.alpha_, x.beta_ + y.beta_};
}

QuadraticRational operator-(const QuadraticRational& x, const QuadraticRational& y)
{
    return {x.alpha_ - y.alpha_, x.beta_ - y.beta_};
}

QuadraticRational operator*(const QuadraticRational& x, const QuadraticRational& y)
{
    return {x.alpha_ * y.alpha_ + 2 * x.beta_ * y.beta_, x.alpha_ * y.beta_ + x.beta_ * y.alpha_};
}

std::string QuadraticRational::str() const
{
    if (beta_ == 0) {
        return to_string(alpha_);
    }
    std::string out = alpha_ == 0 ? "" : to_string(alpha_) + (beta_ < 0 ? " - " : " + ");
    const BigRational b = alpha_ == 0 ? beta_ : abs(beta_);
    return out + to_string(b) + "*sqrt(2)";
}

std::string QuadraticRational::decimal(unsigned digits) const
{
    // floor(sqrt2 * 2^bits) / 2^bits, far below the printed precision.
    const std::uint64_t bits = 4 * (digits + 8);
    BigInt root;
    mpz_sqrt(root.get_mpz_t(), BigInt(2 * pow2(2 * bits)).get_mpz_t());
    return to_decimal(alpha_ + beta_ * make_rational(root, pow2(bits)), digits);
}

RingAmplitude::RingAmplitude(BigInt a, BigInt b, BigInt c, BigInt d, std::uint64_t k)
    : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(std::move(d)), k_(k)
{
    canonicalize();
}

void RingAmplitude::canonicalize()
{
    if (is_zero()) {
        k_ = 0;
        return;
    }
    // (a + b sqrt2) / sqrt2 = b + (a/2) sqrt2, exact when a is even.
    while (k_ > 0 && mpz_even_p(a_.get_mpz_t()) && mpz_even_p(c_.get_mpz_t())) {
        BigInt na = b_, nb = a_ / 2, nc = d_, nd = c_ / 2;
        a_ = std::move(na);
        b_ = std::move(nb);
        c_ = std::move(nc);
        d_ = std::move(nd);
        --k_;
    }
}

RingAmplitude RingAmplitude::lifted(std::uint64_t k) const
{
    RingAmplitude r = *this;
    for (; r.k_ < k; ++r.k_) {
        // (a + b sqrt2) sqrt2 = 2b + a sqrt2.
        BigInt na = 2 * r.b_, nb = r.a_, nc = 2 * r.d_, nd = r.c_;
        r.a_ = std::move(na);
        r.b_ = std::move(nb);
        r.c_ = std::move(nc);
        r.d_ = std::move(nd);
    }
    return r;
}

RingAmplitude operator+(const RingAmplitude& x, const RingAmplitude& y)
{
    const auto k = std::max(x.k_, y.k_);
    const RingAmplitude lx = x.lifted(k);
    const RingAmplitude ly = y.lifted(k);
    return {lx.a_ + ly.a_, lx.b_ + ly.b_, lx.c_ + ly.c_, lx.d_ + ly.d_, k};
}

RingAmplitude operator-(const RingAmplitude& x, const RingAmplitude& y) { return x + (-y); }

RingAmplitude operator*(const RingAmplitude& x, const RingAmplitude& y)
{
    // (p + q i)(r + s i) with p, q, r, s in Z[sqrt2].
    auto mul = [](const BigInt& u1, const BigInt& v1, const BigInt& u2, const BigInt& v2) {
        return std::pair<BigInt, BigInt>(u1 * u2 + 2 * v1 * v2, u1 * v2 + v1 * u2);
    };
    auto [pr1, pr2] = mul(x.a_, x.b_, y.a_, y.b_);
    auto [qs1, qs2] = mul(x.c_, x.d_, y.c_, y.d_);
    auto [ps1, ps2] = mul(x.a_, x.b_, y.c_, y.d_);
    auto [qr1, qr2] = mul(x.c_, x.d_, y.a_, y.b_);
    return {pr1 - qs1, pr2 - qs2, ps1 + qr1, ps2 + qr2, x.k_ + y.k_};
}

namespace {

// (u + v sqrt2) / sqrt2^k as alpha + beta sqrt2.
QuadraticRational over_root2_power(const BigInt& u, const BigInt& v, std::uint64_t k)
{
    const BigInt scale = pow2(k / 2);
    if (k % 2 == 0) {
        return {make_rational(u, scale), make_rational(v, scale)};
    }
    // (u + v sqrt2) / sqrt2 = v + (u/2) sqrt2.
    return {make_rational(v, scale), make_rational(u, BigInt(2 * scale))};
}

}  // namespace

QuadraticRational RingAmplitude::real() const { return over_root2_power(a_, b_, k_); }

QuadraticRational RingAmplitude::imag() const { return over_root2_power(c_, d_, k_); }

QuadraticRational RingAmplitude::norm2() const { return (*this * conj()).real(); }

std::string RingAmplitude::str() const
{
    std::ostringstream os;
    os << "(" << a_.get_str() << " + " << b_.get_str() << "*sqrt(2) + (" << c_.get_str() << " + "
       << d_.get_str() << "*sqrt(2))i) / sqrt(2)^" << k_;
    return os.str();
}

}  // namespace wcount
