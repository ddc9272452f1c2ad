#pragma once

// Exact weights of the form numerator * beta^-L.
//
// Every edge weight beta^-i with 0 <= i <= L is the integer beta^(L-i) in
// these units, so node weights are sums of integers and all Dirty /
// Super-Clean tests are exact integer comparisons.

#include "dyncover/bigint.hpp"
#include "dyncover/config.hpp"
#include "dyncover/errors.hpp"

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace dyncover {

template <class Rep>
struct FixedWeight {
    Rep numerator{0};

    friend bool operator==(const FixedWeight& a, const FixedWeight& b) { return a.numerator == b.numerator; }
    friend bool operator<(const FixedWeight& a, const FixedWeight& b) { return a.numerator < b.numerator; }
    friend bool operator<=(const FixedWeight& a, const FixedWeight& b) { return !(b < a); }
    friend bool operator>(const FixedWeight& a, const FixedWeight& b) { return b < a; }
    friend bool operator>=(const FixedWeight& a, const FixedWeight& b) { return !(a < b); }

    FixedWeight& operator+=(const FixedWeight& o) {
        numerator += o.numerator;
        return *this;
    }
    friend FixedWeight operator+(FixedWeight a, const FixedWeight& b) { return a += b; }
};

/// The rational p/q. Only 1, 1/beta, 1/beta^2 and 1/(alpha beta^2) occur.
struct Threshold {
    std::uint64_t p = 1;
    std::uint64_t q = 1;
};

enum class Ordering { LT, EQ, GT };

inline const char* to_string(Ordering o) {
    switch (o) {
        case Ordering::LT: return "LT";
        case Ordering::EQ: return "EQ";
        case Ordering::GT: return "GT";
    }
    return "?";
}

/// A threshold pre-divided into the weight units: w vs p*beta^L/q reduces to
/// w vs floor(p*beta^L/q) plus whether the division was exact.
template <class Rep>
struct ThresholdCut {
    Rep quotient{0};
    bool exact = true;

    Ordering compare(const Rep& w) const {
        if (w < quotient) return Ordering::LT;
        if (quotient < w) return Ordering::GT;
        return exact ? Ordering::EQ : Ordering::LT;
    }
};

/// True when 2 * beta^L fits in an unsigned 128-bit integer.
inline bool fits_u128(const Config& c) {
    BigInt limit = BigInt(1) << 128;
    return 2 * c.beta_pow_L() < limit;
}

/// Per-instance unit table and threshold cuts.
template <class Rep>
class WeightScale {
public:
    using Weight = FixedWeight<Rep>;

    explicit WeightScale(const Config& config) : config_(config) {
        if constexpr (std::is_same_v<Rep, u128>) {
            if (!fits_u128(config)) {
                throw std::invalid_argument("2*beta^L exceeds 128 bits; use the arbitrary-precision weight type");
            }
        }
        pow_.resize(static_cast<std::size_t>(config.L) + 1);
        pow_[0] = Rep(1);
        for (std::size_t k = 1; k < pow_.size(); ++k) pow_[k] = pow_[k - 1] * Rep(config.beta);
        two_ = Rep(2) * pow_.back();

        one_ = Threshold{1, 1};
        inv_beta_ = Threshold{1, config.beta};
        inv_beta2_ = Threshold{1, config.beta * config.beta};
        down_ = Threshold{1, config.alpha_beta2()};
        cut_one_ = make_cut(one_);
        cut_inv_beta_ = make_cut(inv_beta_);
        cut_inv_beta2_ = make_cut(inv_beta2_);
        cut_down_ = make_cut(down_);
    }

    const Config& config() const { return config_; }
    Level top() const { return config_.L; }

    /// beta^k as a raw integer, 0 <= k <= L.
    const Rep& beta_pow(Level k) const { return pow_[static_cast<std::size_t>(k)]; }

    /// beta^(L-i): the weight of an edge at level i, in units.
    const Rep& unit(Level i) const { return pow_[static_cast<std::size_t>(config_.L - i)]; }

    Weight from_pow(Level i) const {
        check_level(i);
        return Weight{unit(i)};
    }

    Weight add_pow(Weight w, Level i) const {
        check_level(i);
        w.numerator += unit(i);
        return w;
    }

    Weight sub_pow(Weight w, Level i) const {
        check_level(i);
        if (w.numerator < unit(i)) {
            throw InvariantViolation("weight underflow subtracting beta^-" + std::to_string(i));
        }
        w.numerator -= unit(i);
        return w;
    }

    /// Sign of w - p/q, exact.
    Ordering compare(const Weight& w, const Threshold& t) const { return make_cut(t).compare(w.numerator); }

    Ordering compare(const Weight& w, const ThresholdCut<Rep>& cut) const { return cut.compare(w.numerator); }

    const Threshold& one() const { return one_; }
    const Threshold& inv_beta() const { return inv_beta_; }
    const Threshold& inv_beta2() const { return inv_beta2_; }
    const Threshold& down_threshold() const { return down_; }

    const ThresholdCut<Rep>& cut_one() const { return cut_one_; }
    const ThresholdCut<Rep>& cut_inv_beta() const { return cut_inv_beta_; }
    const ThresholdCut<Rep>& cut_inv_beta2() const { return cut_inv_beta2_; }
    const ThresholdCut<Rep>& cut_down() const { return cut_down_; }

    // Shorthands used on the hot path.
    bool ge_one(const Weight& w) const { return cut_one_.compare(w.numerator) != Ordering::LT; }
    bool lt_one(const Weight& w) const { return cut_one_.compare(w.numerator) == Ordering::LT; }
    bool le_one(const Weight& w) const { return cut_one_.compare(w.numerator) != Ordering::GT; }
    bool le_inv_beta(const Weight& w) const { return cut_inv_beta_.compare(w.numerator) != Ordering::GT; }
    bool gt_inv_beta2(const Weight& w) const { return cut_inv_beta2_.compare(w.numerator) == Ordering::GT; }
    bool le_inv_beta2(const Weight& w) const { return !gt_inv_beta2(w); }
    bool le_down(const Weight& w) const { return cut_down_.compare(w.numerator) != Ordering::GT; }
    bool gt_down(const Weight& w) const { return !le_down(w); }
    bool lt_two(const Weight& w) const { return w.numerator < two_; }

    /// "numerator/beta^L" in decimal.
    std::string render(const Weight& w) const {
        return detail::to_decimal(w.numerator) + "/" + detail::to_decimal(pow_.back());
    }

private:
    void check_level(Level i) const {
        if (i < 0 || i > config_.L) {
            throw std::out_of_range("level " + std::to_string(i) + " outside [0, " + std::to_string(config_.L) + "]");
        }
    }

    ThresholdCut<Rep> make_cut(const Threshold& t) const {
        if (t.q == 0) throw std::invalid_argument("threshold denominator is zero");
        Rep scaled = Rep(t.p) * pow_.back();
        ThresholdCut<Rep> cut;
        cut.quotient = scaled / Rep(t.q);
        cut.exact = (scaled % Rep(t.q)) == Rep(0);
        return cut;
    }

    Config config_;
    std::vector<Rep> pow_;
    Rep two_{0};
    Threshold one_, inv_beta_, inv_beta2_, down_;
    ThresholdCut<Rep> cut_one_, cut_inv_beta_, cut_inv_beta2_, cut_down_;
};

}  // namespace dyncover
