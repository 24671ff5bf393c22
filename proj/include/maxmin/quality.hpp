#pragma once

#include <cmath>
#include <compare>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>

namespace maxmin {

/// Extended real used for element qualities: -inf, a finite double, or +inf.
///
/// The infinite cases are explicit rather than IEEE sentinels so that
/// comparisons and negation are exact and the value serializes without
/// ambiguity.
class Quality {
 public:
  enum class Kind { NegInf, Finite, PosInf };

  constexpr Quality() = default;

  static constexpr Quality neg_inf() { return Quality(Kind::NegInf, 0.0); }
  static constexpr Quality pos_inf() { return Quality(Kind::PosInf, 0.0); }
  static constexpr Quality finite(double v) { return Quality(Kind::Finite, v); }

  /// Maps IEEE infinities onto the explicit cases.
  static constexpr Quality from_double(double v) {
    if (v == std::numeric_limits<double>::infinity()) return pos_inf();
    if (v == -std::numeric_limits<double>::infinity()) return neg_inf();
    return finite(v);
  }

  constexpr Kind kind() const { return kind_; }
  constexpr bool is_finite() const { return kind_ == Kind::Finite; }

  /// Finite value, or +/-infinity as an IEEE double.
  constexpr double to_double() const {
    switch (kind_) {
      case Kind::NegInf: return -std::numeric_limits<double>::infinity();
      case Kind::PosInf: return std::numeric_limits<double>::infinity();
      default: return value_;
    }
  }

  constexpr Quality operator-() const {
    switch (kind_) {
      case Kind::NegInf: return pos_inf();
      case Kind::PosInf: return neg_inf();
      default: return finite(-value_);
    }
  }

  constexpr std::strong_ordering operator<=>(const Quality& o) const {
    if (kind_ != o.kind_) return rank() <=> o.rank();
    if (kind_ != Kind::Finite) return std::strong_ordering::equal;
    if (value_ < o.value_) return std::strong_ordering::less;
    if (value_ > o.value_) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }
  constexpr bool operator==(const Quality& o) const {
    return (*this <=> o) == std::strong_ordering::equal;
  }

  std::string to_string() const {
    switch (kind_) {
      case Kind::NegInf: return "-inf";
      case Kind::PosInf: return "inf";
      default: {
        std::ostringstream os;
        os.precision(17);
        os << value_;
        return os.str();
      }
    }
  }

 private:
  constexpr Quality(Kind k, double v) : kind_(k), value_(v) {}
  constexpr int rank() const {
    return kind_ == Kind::NegInf ? 0 : (kind_ == Kind::Finite ? 1 : 2);
  }

  Kind kind_ = Kind::NegInf;
  double value_ = 0.0;
};

inline std::ostream& operator<<(std::ostream& os, const Quality& q) {
  switch (q.kind()) {
    case Quality::Kind::NegInf: return os << "-inf";
    case Quality::Kind::PosInf: return os << "inf";
    default: return os << q.to_double();
  }
}

/// Optimization sense. MinMax runs are realized by negating weights and
/// solving the MaxMin problem.
enum class Direction { MaxMin, MinMax };

inline const char* to_string(Direction d) {
  return d == Direction::MaxMin ? "maxmin" : "minmax";
}

}  // namespace maxmin
