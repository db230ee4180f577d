#pragma once

#include <cmath>

namespace ghlab {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  Vec2() = default;
  Vec2(double x_, double y_) : x(x_), y(y_) {}

  Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
  Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
  Vec2 operator*(double s) const { return {x * s, y * s}; }
  Vec2 operator/(double s) const { return {x / s, y / s}; }
  Vec2& operator+=(Vec2 o) {
    x += o.x;
    y += o.y;
    return *this;
  }
  Vec2& operator-=(Vec2 o) {
    x -= o.x;
    y -= o.y;
    return *this;
  }
};

inline Vec2 operator*(double s, Vec2 v) { return v * s; }

inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }
inline double norm2(Vec2 a) { return a.x * a.x + a.y * a.y; }
inline double dist(Vec2 a, Vec2 b) { return norm(a - b); }

inline Vec2 normalized(Vec2 a) {
  double n = norm(a);
  return n > 0.0 ? a / n : Vec2{0.0, 0.0};
}

// Counterclockwise rotation by a quarter turn.
inline Vec2 perp(Vec2 a) { return {-a.y, a.x}; }

inline Vec2 from_angle(double t) { return {std::cos(t), std::sin(t)}; }

// Angle between two nonzero vectors, in [0, pi].
inline double angle_between(Vec2 a, Vec2 b) {
  return std::atan2(std::fabs(cross(a, b)), dot(a, b));
}

// Distance from point p to the closed segment [a, b].
inline double segment_distance(Vec2 p, Vec2 a, Vec2 b) {
  Vec2 ab = b - a;
  double t = norm2(ab) > 0.0 ? dot(p - a, ab) / norm2(ab) : 0.0;
  t = std::fmin(1.0, std::fmax(0.0, t));
  return dist(p, a + ab * t);
}

constexpr double kPi = 3.14159265358979323846;

}  // namespace ghlab
