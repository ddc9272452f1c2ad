#pragma once

#include "dyncover/bigint.hpp"
#include "dyncover/errors.hpp"

#include <cstdint>
#include <string>

namespace dyncover {

using NodeId = std::uint32_t;
using EdgeId = std::uint64_t;
using Level = int;

/// Instance constants. beta and alpha follow the level-hierarchy parameters;
/// L is the top level, chosen so that n^f * beta^-L <= 1/beta.
struct Config {
    std::uint32_t n = 0;
    std::uint32_t f = 0;
    std::uint64_t beta = 17;
    std::uint64_t alpha = 0;
    Level L = 0;
    std::uint64_t approx_factor = 0;  // f * alpha * beta^2

    /// beta^L as an exact big integer.
    BigInt beta_pow_L() const { return boost::multiprecision::pow(BigInt(beta), static_cast<unsigned>(L)); }

    /// alpha * beta^2, the denominator of the Down-Dirty threshold.
    std::uint64_t alpha_beta2() const { return alpha * beta * beta; }
};

inline constexpr std::uint64_t kBeta = 17;

/// Builds a Config for n nodes and edges of at most f endpoints.
/// Rejects n < 2 and f < 2 (singleton edges have no "other endpoint").
inline Config make_config(std::uint32_t n, std::uint32_t f) {
    if (n < 2) throw std::invalid_argument("node count must be at least 2, got " + std::to_string(n));
    if (f < 2) throw std::invalid_argument("max edge size f must be at least 2, got " + std::to_string(f));
    if (f > 64) throw std::invalid_argument("max edge size f must be at most 64, got " + std::to_string(f));

    Config c;
    c.n = n;
    c.f = f;
    c.beta = kBeta;
    c.alpha = 1 + 36ULL * f * f * kBeta * kBeta;

    // ceil(f * log_beta n) is the smallest k with beta^k >= n^f; computed
    // exactly instead of through floating logarithms.
    const BigInt target = boost::multiprecision::pow(BigInt(n), f);
    BigInt power = 1;
    Level k = 0;
    while (power < target) {
        power *= kBeta;
        ++k;
    }
    c.L = k + 1;
    c.approx_factor = static_cast<std::uint64_t>(f) * c.alpha * kBeta * kBeta;
    return c;
}

}  // namespace dyncover
