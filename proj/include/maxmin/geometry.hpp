#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <string>
#include <vector>

#include "maxmin/errors.hpp"

namespace maxmin {

inline constexpr double kPi = std::numbers::pi;

/// Angles within this of the minimum count as tied.
inline constexpr double kAngleTieTolerance = 1e-12;

struct Point2 {
  double x = 0.0;
  double y = 0.0;
  friend bool operator==(const Point2&, const Point2&) = default;
};

struct Point3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
  friend bool operator==(const Point3&, const Point3&) = default;
};

inline Point2 operator-(const Point2& a, const Point2& b) { return {a.x - b.x, a.y - b.y}; }
inline Point2 operator+(const Point2& a, const Point2& b) { return {a.x + b.x, a.y + b.y}; }
inline Point2 operator*(double s, const Point2& a) { return {s * a.x, s * a.y}; }
inline double dot(const Point2& a, const Point2& b) { return a.x * b.x + a.y * b.y; }
inline double cross(const Point2& a, const Point2& b) { return a.x * b.y - a.y * b.x; }

/// Twice the signed area of (o, a, b); positive for a left turn.
inline double orient(const Point2& o, const Point2& a, const Point2& b) {
  return cross(a - o, b - o);
}

inline Point3 operator-(const Point3& a, const Point3& b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
inline Point3 operator+(const Point3& a, const Point3& b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
inline Point3 operator*(double s, const Point3& a) { return {s * a.x, s * a.y, s * a.z}; }
inline double dot(const Point3& a, const Point3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline Point3 cross(const Point3& a, const Point3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline double norm(const Point3& a) { return std::sqrt(dot(a, a)); }
inline double norm(const Point2& a) { return std::hypot(a.x, a.y); }
inline Point3 normalized(const Point3& a) {
  double n = norm(a);
  return n > 0 ? (1.0 / n) * a : a;
}

/// Six times the signed volume of tetrahedron (a, b, c, d).
inline double orient3(const Point3& a, const Point3& b, const Point3& c, const Point3& d) {
  return dot(cross(b - a, c - a), d - a);
}

/// Angle between two nonzero vectors, in [0, pi], via atan2 of the cross
/// norm and the dot product.
inline double vector_angle(const Point3& u, const Point3& v) {
  return std::atan2(norm(cross(u, v)), dot(u, v));
}
inline double vector_angle(const Point2& u, const Point2& v) {
  return std::atan2(std::abs(cross(u, v)), dot(u, v));
}

/// Solid angle of the triangle (a, b, c) seen from the origin, signed by
/// the orientation of the triple (Van Oosterom-Strackee).
inline double signed_triangle_solid_angle(const Point3& a, const Point3& b, const Point3& c) {
  const double la = norm(a), lb = norm(b), lc = norm(c);
  const double num = dot(a, cross(b, c));
  const double den = la * lb * lc + dot(a, b) * lc + dot(a, c) * lb + dot(b, c) * la;
  return 2.0 * std::atan2(num, den);
}

/// Deduplicated point list plus the index mapping back to the input.
template <class P>
struct Deduplicated {
  std::vector<P> points;
  std::vector<int> original;      // points[i] came from input[original[i]] (first occurrence)
  std::vector<int> to_unique;     // input[j] maps to points[to_unique[j]]
  std::size_t duplicates = 0;
};

namespace detail {
inline auto coords(const Point2& p) { return std::array<double, 3>{p.x, p.y, 0.0}; }
inline auto coords(const Point3& p) { return std::array<double, 3>{p.x, p.y, p.z}; }
}  // namespace detail

/// Removes exact coordinate duplicates, keeping first occurrences in input
/// order. Throws InvalidInput on non-finite coordinates.
template <class P>
Deduplicated<P> deduplicate(const std::vector<P>& input) {
  Deduplicated<P> out;
  std::vector<int> order(input.size());
  for (std::size_t i = 0; i < input.size(); ++i) {
    for (double c : detail::coords(input[i]))
      if (!std::isfinite(c)) throw InvalidInput("non-finite coordinate in point " + std::to_string(i));
    order[i] = static_cast<int>(i);
  }
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return detail::coords(input[static_cast<std::size_t>(a)]) < detail::coords(input[static_cast<std::size_t>(b)]);
  });
  std::vector<int> rep(input.size(), -1);
  for (std::size_t k = 0; k < order.size(); ++k) {
    int i = order[k];
    if (k > 0 && input[static_cast<std::size_t>(order[k - 1])] == input[static_cast<std::size_t>(i)])
      rep[static_cast<std::size_t>(i)] = rep[static_cast<std::size_t>(order[k - 1])];
    else
      rep[static_cast<std::size_t>(i)] = i;
  }
  out.to_unique.assign(input.size(), -1);
  for (std::size_t i = 0; i < input.size(); ++i) {
    if (rep[i] == static_cast<int>(i)) {
      out.to_unique[i] = static_cast<int>(out.points.size());
      out.points.push_back(input[i]);
      out.original.push_back(static_cast<int>(i));
    } else {
      out.to_unique[i] = out.to_unique[static_cast<std::size_t>(rep[i])];
      ++out.duplicates;
    }
  }
  return out;
}

}  // namespace maxmin
