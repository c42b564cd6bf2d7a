#ifndef HYPERTURAN_COUNT_HPP
#define HYPERTURAN_COUNT_HPP

#include <compare>
#include <cstdint>
#include <limits>
#include <string>

#include "hyperturan/error.hpp"

namespace hyperturan {

/**
 * Nonnegative 128-bit counter. Additions and multiplications that would
 * leave the range throw OverflowError instead of wrapping.
 */
class Count {
public:
  using Rep = unsigned __int128;

  constexpr Count() = default;
  constexpr Count(std::uint64_t v) : value_(v) {} // NOLINT(implicit)

  static constexpr Count from_rep(Rep v) {
    Count c;
    c.value_ = v;
    return c;
  }

  [[nodiscard]] constexpr Rep rep() const { return value_; }

  Count& operator+=(Count o) {
    if (value_ > std::numeric_limits<Rep>::max() - o.value_)
      throw OverflowError("copy counter overflow in addition");
    value_ += o.value_;
    return *this;
  }

  Count& operator*=(Count o) {
    if (o.value_ != 0 && value_ > std::numeric_limits<Rep>::max() / o.value_)
      throw OverflowError("copy counter overflow in multiplication");
    value_ *= o.value_;
    return *this;
  }

  friend Count operator+(Count a, Count b) { return a += b; }
  friend Count operator*(Count a, Count b) { return a *= b; }
  friend constexpr bool operator==(Count a, Count b) { return a.value_ == b.value_; }
  friend constexpr std::strong_ordering operator<=>(Count a, Count b) {
    return a.value_ <=> b.value_;
  }

  [[nodiscard]] bool fits_u64() const {
    return value_ <= std::numeric_limits<std::uint64_t>::max();
  }

  /// Narrowing conversion; throws if the value does not fit.
  [[nodiscard]] std::uint64_t to_u64() const {
    if (!fits_u64()) throw OverflowError("count exceeds 64 bits: " + to_string());
    return static_cast<std::uint64_t>(value_);
  }

  [[nodiscard]] std::string to_string() const {
    if (value_ == 0) return "0";
    std::string s;
    Rep v = value_;
    while (v != 0) {
      s.insert(s.begin(), static_cast<char>('0' + static_cast<int>(v % 10)));
      v /= 10;
    }
    return s;
  }

private:
  Rep value_ = 0;
};

} // namespace hyperturan

#endif
