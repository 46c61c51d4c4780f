#include "wcount/polynomial.hpp"

#include <algorithm>

namespace wcount {

IntPolynomial::IntPolynomial(std::initializer_list<std::uint64_t> coefficients)
    : coefficients_(coefficients)
{
    trim();
}

IntPolynomial::IntPolynomial(std::vector<std::uint64_t> coefficients)
    : coefficients_(std::move(coefficients))
{
    trim();
}

void IntPolynomial::trim()
{
    while (!coefficients_.empty() && coefficients_.back() == 0) {
        coefficients_.pop_back();
    }
}

std::uint64_t IntPolynomial::operator()(std::uint64_t n) const
{
    std::uint64_t r = 0;
    for (auto it = coefficients_.rbegin(); it != coefficients_.rend(); ++it) {
        r = r * n + *it;
    }
    return r;
}

std::string IntPolynomial::str() const
{
    if (coefficients_.empty()) {
        return "0";
    }
    std::string s;
    for (std::size_t i = coefficients_.size(); i-- > 0;) {
        auto c = coefficients_[i];
        if (c == 0) {
            continue;
        }
        if (!s.empty()) {
            s += " + ";
        }
        if (i == 0 || c != 1) {
            s += std::to_string(c);
        }
        if (i >= 1) {
            s += "n";
        }
        if (i >= 2) {
            s += "^" + std::to_string(i);
        }
    }
    return s;
}

IntPolynomial operator+(const IntPolynomial& a, const IntPolynomial& b)
{
    std::vector<std::uint64_t> c(std::max(a.coefficients_.size(), b.coefficients_.size()), 0);
    for (std::size_t i = 0; i < a.coefficients_.size(); ++i) {
        c[i] += a.coefficients_[i];
    }
    for (std::size_t i = 0; i < b.coefficients_.size(); ++i) {
        c[i] += b.coefficients_[i];
    }
    return IntPolynomial(std::move(c));
}

IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b)
{
    if (a.is_zero() || b.is_zero()) {
        return {};
    }
    std::vector<std::uint64_t> c(a.coefficients_.size() + b.coefficients_.size() - 1, 0);
    for (std::size_t i = 0; i < a.coefficients_.size(); ++i) {
        for (std::size_t j = 0; j < b.coefficients_.size(); ++j) {
            c[i + j] += a.coefficients_[i] * b.coefficients_[j];
        }
    }
    return IntPolynomial(std::move(c));
}

SizeFunction::SizeFunction(IntPolynomial p)
    : eval_([p](std::uint64_t n) { return p(n); }), text_(p.str()), poly_{p}
{
}

SizeFunction::SizeFunction(std::function<std::uint64_t(std::uint64_t)> eval, std::string text)
    : eval_(std::move(eval)), text_(std::move(text))
{
}

SizeFunction operator+(const SizeFunction& a, const SizeFunction& b)
{
    if (a.polynomial() && b.polynomial()) {
        return {*a.polynomial() + *b.polynomial()};
    }
    return {[a, b](std::uint64_t n) { return a(n) + b(n); }, "(" + a.str() + ") + (" + b.str() + ")"};
}

}  // namespace wcount
