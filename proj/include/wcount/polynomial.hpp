#pragma once

#include <cstdint>
#include <functional>
#include <initializer_list>
#include <string>
#include <vector>

namespace wcount {

/// Polynomial with nonnegative integer coefficients, lowest degree first.
class IntPolynomial {
public:
    IntPolynomial() = default;
    IntPolynomial(std::initializer_list<std::uint64_t> coefficients);
    explicit IntPolynomial(std::vector<std::uint64_t> coefficients);

    static IntPolynomial constant(std::uint64_t c) { return IntPolynomial{c}; }
    static IntPolynomial identity() { return IntPolynomial{0, 1}; }

    std::uint64_t operator()(std::uint64_t n) const;

    const std::vector<std::uint64_t>& coefficients() const { return coefficients_; }
    bool is_zero() const { return coefficients_.empty(); }
    std::size_t degree() const { return coefficients_.empty() ? 0 : coefficients_.size() - 1; }

    std::string str() const;

    friend IntPolynomial operator+(const IntPolynomial& a, const IntPolynomial& b);
    friend IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b);
    friend bool operator==(const IntPolynomial& a, const IntPolynomial& b) = default;

private:
    void trim();
    std::vector<std::uint64_t> coefficients_;
};

/// Path length as a function of the input length n.
///
/// Every base problem uses a plain polynomial. Closure constructions add
/// selector and padding blocks whose widths involve max and ceil(log2), so the
/// general case is a composed size function that still evaluates exactly.
class SizeFunction {
public:
    SizeFunction(IntPolynomial p);  // NOLINT(google-explicit-constructor)
    SizeFunction(std::function<std::uint64_t(std::uint64_t)> eval, std::string text);

    static SizeFunction constant(std::uint64_t c) { return {IntPolynomial::constant(c)}; }

    std::uint64_t operator()(std::uint64_t n) const { return eval_(n); }
    const std::string& str() const { return text_; }

    /// The polynomial when this size function is one, else nullptr.
    const IntPolynomial* polynomial() const { return poly_.empty() ? nullptr : &poly_.front(); }

private:
    std::function<std::uint64_t(std::uint64_t)> eval_;
    std::string text_;
    std::vector<IntPolynomial> poly_;
};

SizeFunction operator+(const SizeFunction& a, const SizeFunction& b);

}  // namespace wcount
