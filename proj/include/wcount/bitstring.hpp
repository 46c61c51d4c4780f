#pragma once

#include "wcount/rational.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace wcount {

/// Finite binary string. Numbers are read big-endian: "110" is 6.
class BitString {
public:
    BitString() = default;

    /// From a string of '0'/'1'. Throws std::invalid_argument otherwise.
    explicit BitString(std::string_view bits);

    /// The low `width` bits of `value`, most significant first.
    static BitString from_uint(std::uint64_t value, std::size_t width);
    static BitString from_number(const BigInt& value, std::size_t width);

    /// Shortest big-endian encoding of n >= 0 ("0" for zero).
    static BitString encode_natural(const BigInt& n);

    std::size_t size() const { return bits_.size(); }
    bool empty() const { return bits_.empty(); }
    bool operator[](std::size_t i) const { return bits_[i] != 0; }

    /// #u, the big-endian value; 0 for the empty string.
    BigInt to_number() const;
    std::uint64_t to_uint64() const;

    bool is_zero() const;

    BitString slice(std::size_t pos, std::size_t len) const;
    BitString prefix(std::size_t len) const { return slice(0, len); }
    BitString suffix(std::size_t len) const { return slice(size() - len, len); }

    std::string str() const;

    friend BitString operator+(const BitString& a, const BitString& b);
    friend bool operator==(const BitString& a, const BitString& b) = default;

private:
    std::vector<std::uint8_t> bits_;
};

/// Ceiling of log2(n) for n >= 1; 0 for n <= 1.
std::uint64_t ceil_log2(std::uint64_t n);

}  // namespace wcount
