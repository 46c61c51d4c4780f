#pragma once

// Exact arithmetic in Z[i, 1/sqrt2], which contains every Clifford+T amplitude,
// and in Q(sqrt2), where the acceptance probabilities of such circuits live.

#include "wcount/rational.hpp"

#include <string>

namespace wcount {

/// alpha + beta sqrt2 with rational alpha, beta.
class QuadraticRational {
public:
    QuadraticRational() = default;
    QuadraticRational(BigRational alpha, BigRational beta = 0);  // NOLINT(google-explicit-constructor)
    QuadraticRational(int alpha) : QuadraticRational(BigRational(alpha)) {}  // NOLINT

    const BigRational& alpha() const { return alpha_; }
    const BigRational& beta() const { return beta_; }
    bool is_rational() const { return beta_ == 0; }

    int sign() const;

    friend QuadraticRational operator+(const QuadraticRational& x, const QuadraticRational& y);
    friend QuadraticRational operator-(const QuadraticRational& x, const QuadraticRational& y);
    friend QuadraticRational operator*(const QuadraticRational& x, const QuadraticRational& y);
    QuadraticRational operator-() const { return {-alpha_, -beta_}; }
    QuadraticRational& operator+=(const QuadraticRational& y) { return *this = *this + y; }

    friend bool operator==(const QuadraticRational& x, const QuadraticRational& y)
    {
        return x.alpha_ == y.alpha_ && x.beta_ == y.beta_;
    }
    friend bool operator<(const QuadraticRational& x, const QuadraticRational& y)
    {
        return (x - y).sign() < 0;
    }
    friend bool operator<=(const QuadraticRational& x, const QuadraticRational& y)
    {
        return (x - y).sign() <= 0;
    }
    friend bool operator>(const QuadraticRational& x, const QuadraticRational& y) { return y < x; }
    friend bool operator>=(const QuadraticRational& x, const QuadraticRational& y) { return y <= x; }

    /// "a" or "a + b*sqrt(2)" with a, b printed as rationals.
    std::string str() const;
    /// Decimal approximation with `digits` fractional digits.
    std::string decimal(unsigned digits = 12) const;

private:
    BigRational alpha_;
    BigRational beta_;
};

/// (a + b sqrt2 + (c + d sqrt2) i) / sqrt2^k, kept with minimal k.
class RingAmplitude {
public:
    RingAmplitude() = default;
    RingAmplitude(BigInt a, BigInt b, BigInt c, BigInt d, std::uint64_t k);

    static RingAmplitude zero() { return {}; }
    static RingAmplitude one() { return {1, 0, 0, 0, 0}; }
    static RingAmplitude i() { return {0, 0, 1, 0, 0}; }
    static RingAmplitude inv_sqrt2() { return {1, 0, 0, 0, 1}; }
    /// e^{i pi/4} = (1 + i)/sqrt2.
    static RingAmplitude omega() { return {1, 0, 1, 0, 1}; }

    const BigInt& a() const { return a_; }
    const BigInt& b() const { return b_; }
    const BigInt& c() const { return c_; }
    const BigInt& d() const { return d_; }
    std::uint64_t k() const { return k_; }

    bool is_zero() const { return a_ == 0 && b_ == 0 && c_ == 0 && d_ == 0; }

    RingAmplitude conj() const { return {a_, b_, -c_, -d_, k_}; }
    /// Real and imaginary parts as elements of Q(sqrt2).
    QuadraticRational real() const;
    QuadraticRational imag() const;
    /// |z|^2.
    QuadraticRational norm2() const;

    friend RingAmplitude operator+(const RingAmplitude& x, const RingAmplitude& y);
    friend RingAmplitude operator-(const RingAmplitude& x, const RingAmplitude& y);
    friend RingAmplitude operator*(const RingAmplitude& x, const RingAmplitude& y);
    RingAmplitude operator-() const { return {-a_, -b_, -c_, -d_, k_}; }
    RingAmplitude& operator+=(const RingAmplitude& y) { return *this = *this + y; }

    friend bool operator==(const RingAmplitude& x, const RingAmplitude& y)
    {
        return x.k_ == y.k_ && x.a_ == y.a_ && x.b_ == y.b_ && x.c_ == y.c_ && x.d_ == y.d_;
    }

    std::string str() const;

private:
    void canonicalize();
    /// Same value with denominator sqrt2^k for k >= k_.
    RingAmplitude lifted(std::uint64_t k) const;

    BigInt a_, b_, c_, d_;
    std::uint64_t k_ = 0;
};

}  // namespace wcount
