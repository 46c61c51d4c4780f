#include "wcount/bitstring.hpp"

#include <stdexcept>

namespace wcount {

BitString::BitString(std::string_view bits)
{
    bits_.reserve(bits.size());
    for (char c : bits) {
        if (c != '0' && c != '1') {
            throw std::invalid_argument("bit string may contain only 0 and 1: '" +
                                        std::string(bits) + "'");
        }
        bits_.push_back(c == '1' ? 1 : 0);
    }
}

BitString BitString::from_uint(std::uint64_t value, std::size_t width)
{
    BitString s;
    s.bits_.resize(width);
    for (std::size_t i = 0; i < width && i < 64; ++i) {
        s.bits_[width - 1 - i] = static_cast<std::uint8_t>((value >> i) & 1U);
    }
    return s;
}

BitString BitString::from_number(const BigInt& value, std::size_t width)
{
    BitString s;
    s.bits_.resize(width);
    for (std::size_t i = 0; i < width; ++i) {
        s.bits_[width - 1 - i] = static_cast<std::uint8_t>(mpz_tstbit(value.get_mpz_t(), i));
    }
    return s;
}

BitString BitString::encode_natural(const BigInt& n)
{
    if (n < 0) {
        throw std::invalid_argument("encode_natural needs n >= 0");
    }
    return from_number(n, bit_length(n));
}

BigInt BitString::to_number() const
{
    BigInt r = 0;
    for (auto b : bits_) {
        r <<= 1;
        if (b) {
            r += 1;
        }
    }
    return r;
}

std::uint64_t BitString::to_uint64() const
{
    if (bits_.size() > 64) {
        throw std::overflow_error("bit string longer than 64 bits");
    }
    std::uint64_t r = 0;
    for (auto b : bits_) {
        r = (r << 1) | b;
    }
    return r;
}

bool BitString::is_zero() const
{
    for (auto b : bits_) {
        if (b) {
            return false;
        }
    }
    return true;
}

BitString BitString::slice(std::size_t pos, std::size_t len) const
{
    if (pos + len > bits_.size()) {
        throw std::out_of_range("bit string slice out of range");
    }
    BitString s;
    s.bits_.assign(bits_.begin() + static_cast<std::ptrdiff_t>(pos),
                   bits_.begin() + static_cast<std::ptrdiff_t>(pos + len));
    return s;
}

std::string BitString::str() const
{
    std::string s;
    s.reserve(bits_.size());
    for (auto b : bits_) {
        s.push_back(b ? '1' : '0');
    }
    return s;
}

BitString operator+(const BitString& a, const BitString& b)
{
    BitString s = a;
    s.bits_.insert(s.bits_.end(), b.bits_.begin(), b.bits_.end());
    return s;
}

std::uint64_t ceil_log2(std::uint64_t n)
{
    std::uint64_t r = 0;
    while ((std::uint64_t{1} << r) < n) {
        ++r;
    }
    return r;
}

}  // namespace wcount
