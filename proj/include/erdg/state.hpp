#pragma once

#include <array>
#include <cmath>

namespace erdg {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  friend Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
  friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
  friend Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
  friend bool operator==(Vec2 a, Vec2 b) = default;
};

inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }

/// Conserved variables (rho, rho vx, rho vy, E) at a point.
struct ConsState {
  double rho = 0.0;
  double mx = 0.0;
  double my = 0.0;
  double E = 0.0;

  double& operator[](int i) { return (&rho)[i]; }
  double operator[](int i) const { return (&rho)[i]; }

  ConsState& operator+=(const ConsState& o) {
    rho += o.rho; mx += o.mx; my += o.my; E += o.E;
    return *this;
  }
  ConsState& operator-=(const ConsState& o) {
    rho -= o.rho; mx -= o.mx; my -= o.my; E -= o.E;
    return *this;
  }
  ConsState& operator*=(double s) {
    rho *= s; mx *= s; my *= s; E *= s;
    return *this;
  }
  friend ConsState operator+(ConsState a, const ConsState& b) { return a += b; }
  friend ConsState operator-(ConsState a, const ConsState& b) { return a -= b; }
  friend ConsState operator*(double s, ConsState a) { return a *= s; }
  friend bool operator==(const ConsState&, const ConsState&) = default;
};

inline double dot(const ConsState& a, const ConsState& b) {
  return a.rho * b.rho + a.mx * b.mx + a.my * b.my + a.E * b.E;
}

/// Primitive variables (rho, vx, vy, p).
struct PrimState {
  double rho = 0.0;
  double vx = 0.0;
  double vy = 0.0;
  double p = 0.0;

  friend bool operator==(const PrimState&, const PrimState&) = default;
};

}  // namespace erdg
