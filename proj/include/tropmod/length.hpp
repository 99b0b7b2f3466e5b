#pragma once

// Exact nonnegative-or-infinite edge lengths. Finite values are reduced
// fractions of 64-bit integers; arithmetic that would overflow throws.

#include <compare>
#include <cstdint>
#include <numeric>
#include <ostream>
#include <string>

#include "tropmod/error.hpp"

namespace tropmod {

class Length {
  public:
    constexpr Length() = default;
    Length(std::int64_t num, std::int64_t den = 1) : num_(num), den_(den) {
        if (den_ == 0) throw Error(ErrorCode::BadLength, "zero denominator");
        normalize();
    }

    static Length infinity() {
        Length l;
        l.infinite_ = true;
        l.num_ = 1;
        l.den_ = 0;
        return l;
    }

    /// Accepts "p", "p/q" or "inf".
    static Length parse(const std::string& text) {
        if (text == "inf" || text == "infinity" || text == "∞") return infinity();
        try {
            std::size_t used = 0;
            const auto slash = text.find('/');
            if (slash == std::string::npos) {
                const auto num = std::stoll(text, &used);
                if (used != text.size()) throw Error(ErrorCode::BadLength, "not a rational: '" + text + "'");
                return Length(num);
            }
            const auto num_text = text.substr(0, slash);
            const auto den_text = text.substr(slash + 1);
            const auto num = std::stoll(num_text, &used);
            if (used != num_text.size()) throw Error(ErrorCode::BadLength, "not a rational: '" + text + "'");
            const auto den = std::stoll(den_text, &used);
            if (used != den_text.size()) throw Error(ErrorCode::BadLength, "not a rational: '" + text + "'");
            return Length(num, den);
        } catch (const std::logic_error&) {
            throw Error(ErrorCode::BadLength, "not a rational: '" + text + "'");
        }
    }

    bool is_infinite() const noexcept { return infinite_; }
    bool is_finite() const noexcept { return !infinite_; }
    bool is_zero() const noexcept { return !infinite_ && num_ == 0; }
    bool is_positive() const noexcept { return infinite_ || num_ > 0; }
    std::int64_t numerator() const noexcept { return num_; }
    std::int64_t denominator() const noexcept { return den_; }

    friend Length operator+(const Length& a, const Length& b) {
        if (a.infinite_ || b.infinite_) return infinity();
        const auto g = std::gcd(a.den_, b.den_);
        std::int64_t lhs = 0, rhs = 0, den = 0, num = 0;
        if (__builtin_mul_overflow(a.num_, b.den_ / g, &lhs) || __builtin_mul_overflow(b.num_, a.den_ / g, &rhs) ||
            __builtin_mul_overflow(a.den_ / g, b.den_, &den) || __builtin_add_overflow(lhs, rhs, &num)) {
            throw Error(ErrorCode::Overflow, "length arithmetic overflows 64 bits");
        }
        return Length(num, den);
    }

    Length& operator+=(const Length& other) { return *this = *this + other; }

    friend bool operator==(const Length& a, const Length& b) noexcept {
        return a.infinite_ == b.infinite_ && a.num_ == b.num_ && a.den_ == b.den_;
    }

    // infinity sorts above every finite value
    friend std::strong_ordering operator<=>(const Length& a, const Length& b) {
        if (a.infinite_ || b.infinite_) return a.infinite_ <=> b.infinite_;
        __int128 lhs = static_cast<__int128>(a.num_) * b.den_;
        __int128 rhs = static_cast<__int128>(b.num_) * a.den_;
        return lhs < rhs ? std::strong_ordering::less
                         : (lhs > rhs ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

    std::string str() const {
        if (infinite_) return "inf";
        if (den_ == 1) return std::to_string(num_);
        return std::to_string(num_) + "/" + std::to_string(den_);
    }

    friend std::ostream& operator<<(std::ostream& os, const Length& l) { return os << l.str(); }

  private:
    void normalize() {
        if (den_ < 0) {
            num_ = -num_;
            den_ = -den_;
        }
        const auto g = std::gcd(num_, den_);
        if (g > 1) {
            num_ /= g;
            den_ /= g;
        }
    }

    bool infinite_ = false;
    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

} // namespace tropmod
