#pragma once

#include <compare>
#include <cstdlib>
#include <string>

namespace ncdirac {

/// Angular-momentum quantum number stored as twice its value, so 3/2 is
/// exact and comparisons never touch floating point.
class HalfInteger {
 public:
  constexpr HalfInteger() = default;

  static constexpr HalfInteger from_twice(int twice) { return HalfInteger(twice); }
  static constexpr HalfInteger from_int(int value) { return HalfInteger(2 * value); }

  constexpr int twice() const { return twice_; }
  constexpr double value() const { return 0.5 * twice_; }
  constexpr bool is_half_odd() const { return twice_ % 2 != 0; }

  constexpr HalfInteger operator-() const { return HalfInteger(-twice_); }
  constexpr HalfInteger operator+(HalfInteger o) const { return HalfInteger(twice_ + o.twice_); }
  constexpr HalfInteger operator-(HalfInteger o) const { return HalfInteger(twice_ - o.twice_); }

  constexpr auto operator<=>(const HalfInteger&) const = default;

  /// "3/2", "-1/2", "2".
  std::string str() const {
    if (!is_half_odd()) return std::to_string(twice_ / 2);
    return std::to_string(twice_) + "/2";
  }

 private:
  constexpr explicit HalfInteger(int twice) : twice_(twice) {}
  int twice_ = 0;
};

inline constexpr HalfInteger kHalf = HalfInteger::from_twice(1);

}  // namespace ncdirac
