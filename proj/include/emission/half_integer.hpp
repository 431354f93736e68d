#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace emission {

// Angular momenta and projections are stored doubled so that both integer
// and half-integer values are exact.
class HalfInteger {
 public:
  constexpr HalfInteger() = default;
  static constexpr HalfInteger from_twice(int twice) { return HalfInteger(twice); }
  static constexpr HalfInteger from_int(int value) { return HalfInteger(2 * value); }
  /// Accepts "1", "-2", "3/2", "-1/2", "1.5", "-0.5".
  static HalfInteger parse(std::string_view text);

  constexpr int twice() const { return twice_; }
  constexpr double value() const { return 0.5 * twice_; }
  constexpr bool is_integer() const { return twice_ % 2 == 0; }
  std::string str() const;

  constexpr HalfInteger operator-() const { return HalfInteger(-twice_); }
  friend constexpr HalfInteger operator+(HalfInteger a, HalfInteger b) {
    return HalfInteger(a.twice_ + b.twice_);
  }
  friend constexpr HalfInteger operator-(HalfInteger a, HalfInteger b) {
    return HalfInteger(a.twice_ - b.twice_);
  }
  friend constexpr auto operator<=>(HalfInteger, HalfInteger) = default;

 private:
  constexpr explicit HalfInteger(int twice) : twice_(twice) {}
  int twice_ = 0;
};

/// A non-negative angular momentum quantum number j.
class HalfIntegerJ {
 public:
  constexpr HalfIntegerJ() = default;
  /// Throws ConfigError for negative input.
  static HalfIntegerJ from_twice(int twice_j);
  static HalfIntegerJ from_int(int j) { return from_twice(2 * j); }
  static HalfIntegerJ parse(std::string_view text);

  constexpr int twice() const { return twice_; }
  constexpr double value() const { return 0.5 * twice_; }
  constexpr HalfInteger as_half_integer() const { return HalfInteger::from_twice(twice_); }
  std::string str() const { return as_half_integer().str(); }

  /// True when |2m| <= 2j and 2m has the parity of 2j.
  constexpr bool admits(HalfInteger m) const {
    const int tm = m.twice();
    return tm <= twice_ && -tm <= twice_ && ((twice_ - tm) % 2 == 0);
  }
  /// m = -j, -j+1, ..., j.
  std::vector<HalfInteger> projections() const;

  friend constexpr auto operator<=>(HalfIntegerJ, HalfIntegerJ) = default;

 private:
  int twice_ = 0;
};

}  // namespace emission
