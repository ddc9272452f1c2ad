#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>
#include <type_traits>

namespace dyncover {

using BigInt = boost::multiprecision::cpp_int;
using u128 = unsigned __int128;

namespace detail {

inline std::string to_decimal(u128 value) {
    if (value == 0) return "0";
    std::string out;
    while (value != 0) {
        out.push_back(static_cast<char>('0' + static_cast<int>(value % 10)));
        value /= 10;
    }
    return {out.rbegin(), out.rend()};
}

inline std::string to_decimal(const BigInt& value) { return value.str(); }

inline BigInt to_big(u128 value) {
    BigInt hi = static_cast<std::uint64_t>(value >> 64);
    return (hi << 64) | BigInt(static_cast<std::uint64_t>(value));
}

inline const BigInt& to_big(const BigInt& value) { return value; }

template <class Rep>
Rep from_u64(std::uint64_t v) {
    return static_cast<Rep>(v);
}

}  // namespace detail
}  // namespace dyncover
