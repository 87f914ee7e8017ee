#ifndef SPINTRAJ_GEOMETRY_HPP
#define SPINTRAJ_GEOMETRY_HPP

#include <cmath>
#include <complex>

namespace spintraj {

using cplx = std::complex<double>;

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  constexpr Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
  constexpr Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
  constexpr Vec2 operator*(double s) const { return {x * s, y * s}; }
  constexpr Vec2 operator/(double s) const { return {x / s, y / s}; }
  constexpr Vec2& operator+=(Vec2 o) { x += o.x; y += o.y; return *this; }
  constexpr double dot(Vec2 o) const { return x * o.x + y * o.y; }
  double norm() const { return std::hypot(x, y); }
  constexpr double norm2() const { return x * x + y * y; }
};
constexpr Vec2 operator*(double s, Vec2 v) { return v * s; }

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  constexpr Vec3 operator+(Vec3 o) const { return {x + o.x, y + o.y, z + o.z}; }
  constexpr Vec3 operator-(Vec3 o) const { return {x - o.x, y - o.y, z - o.z}; }
  constexpr Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
  constexpr Vec3 operator/(double s) const { return {x / s, y / s, z / s}; }
  constexpr double dot(Vec3 o) const { return x * o.x + y * o.y + z * o.z; }
  constexpr Vec3 cross(Vec3 o) const {
    return {y * o.z - z * o.y, z * o.x - x * o.z, x * o.y - y * o.x};
  }
  double norm() const { return std::sqrt(x * x + y * y + z * z); }
  constexpr double norm2() const { return x * x + y * y + z * z; }
  constexpr Vec2 xy() const { return {x, y}; }
};
constexpr Vec3 operator*(double s, Vec3 v) { return v * s; }

inline Vec3 embed(Vec2 v) { return {v.x, v.y, 0.0}; }

// Complex 2-vector and symmetric 2x2 blocks used by the analytic
// wavefunction derivatives.
struct Vec2c {
  cplx x{0.0, 0.0};
  cplx y{0.0, 0.0};

  Vec2c operator+(const Vec2c& o) const { return {x + o.x, y + o.y}; }
  Vec2c operator*(cplx s) const { return {x * s, y * s}; }
};

struct Mat2 {
  double xx = 0.0, xy = 0.0, yy = 0.0;  // symmetric
  constexpr double trace() const { return xx + yy; }
};

struct Mat2c {
  cplx xx{0.0, 0.0}, xy{0.0, 0.0}, yy{0.0, 0.0};  // symmetric
  Mat2c operator+(const Mat2c& o) const { return {xx + o.xx, xy + o.xy, yy + o.yy}; }
};

constexpr double kPi = 3.14159265358979323846;

}  // namespace spintraj

#endif
