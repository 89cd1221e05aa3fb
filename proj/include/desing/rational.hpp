#pragma once

#include <compare>
#include <cstdint>
#include <gmpxx.h>
#include <limits>
#include <string>

#include "errors.hpp"

namespace desing {

/// Exact rational; mpq_class keeps values canonical (lowest terms, positive denominator).
using Rat = mpq_class;

inline Rat make_rat(long num, long den = 1) {
    if (den == 0) throw DomainError("zero denominator");
    Rat r(num, den);
    r.canonicalize();
    return r;
}

inline std::string to_string(const Rat& r) {
    if (r.get_den() == 1) return r.get_num().get_str();
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

inline Rat parse_rat(const std::string& text) {
    Rat r;
    if (text.empty() || r.set_str(text, 10) != 0 || r.get_den() == 0)
        throw InputError("bad rational: '" + text + "'");
    r.canonicalize();
    return r;
}

inline bool is_integer(const Rat& r) { return r.get_den() == 1; }

/// Nonnegative integer or infinity (the order of the zero ideal).
class ExtNat {
  public:
    constexpr ExtNat() = default;
    constexpr ExtNat(std::uint64_t v) : value_(v) {}
    static constexpr ExtNat infinity() {
        ExtNat e;
        e.value_ = kInf;
        return e;
    }
    constexpr bool is_infinite() const { return value_ == kInf; }
    constexpr std::uint64_t value() const {
        if (is_infinite()) throw DomainError("ExtNat: value of infinity");
        return value_;
    }
    constexpr auto operator<=>(const ExtNat&) const = default;
    std::string str() const { return is_infinite() ? "inf" : std::to_string(value_); }

  private:
    static constexpr std::uint64_t kInf = std::numeric_limits<std::uint64_t>::max();
    std::uint64_t value_ = 0;
};

/// Rational or +infinity; the entries of inv.
struct ExtRat {
    Rat value;
    bool infinite = false;

    static ExtRat inf() { return ExtRat{Rat(0), true}; }
    static ExtRat of(const Rat& r) { return ExtRat{r, false}; }

    friend bool operator==(const ExtRat& a, const ExtRat& b) {
        if (a.infinite || b.infinite) return a.infinite == b.infinite;
        return a.value == b.value;
    }
    friend std::strong_ordering operator<=>(const ExtRat& a, const ExtRat& b) {
        if (a.infinite || b.infinite) {
            if (a.infinite && b.infinite) return std::strong_ordering::equal;
            return a.infinite ? std::strong_ordering::greater : std::strong_ordering::less;
        }
        int c = cmp(a.value, b.value);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }
    std::string str() const { return infinite ? "inf" : to_string(value); }
};

} // namespace desing
