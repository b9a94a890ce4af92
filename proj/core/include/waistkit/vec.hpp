#pragma once

#include <array>
#include <cmath>
#include <cstddef>

namespace waistkit {

struct Vec2 {
  double x = 0.0, y = 0.0;

  Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
  Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
  Vec2 operator*(double s) const { return {x * s, y * s}; }
  double dot(const Vec2& o) const { return x * o.x + y * o.y; }
  double norm() const { return std::hypot(x, y); }
  double norm2() const { return x * x + y * y; }
};

inline Vec2 operator*(double s, const Vec2& v) { return v * s; }

// Embedding-space point. Meshes may declare 3- or 4-dimensional isometric
// embeddings; unused trailing coordinates stay zero.
struct VecN {
  std::array<double, 4> c{0.0, 0.0, 0.0, 0.0};
  int dim = 3;

  double& operator[](std::size_t i) { return c[i]; }
  double operator[](std::size_t i) const { return c[i]; }

  VecN operator+(const VecN& o) const {
    VecN r = *this;
    for (int i = 0; i < dim; i++) r.c[i] += o.c[i];
    return r;
  }
  VecN operator-(const VecN& o) const {
    VecN r = *this;
    for (int i = 0; i < dim; i++) r.c[i] -= o.c[i];
    return r;
  }
  VecN operator*(double s) const {
    VecN r = *this;
    for (int i = 0; i < dim; i++) r.c[i] *= s;
    return r;
  }
  double dot(const VecN& o) const {
    double s = 0.0;
    for (int i = 0; i < dim; i++) s += c[i] * o.c[i];
    return s;
  }
  double norm2() const { return dot(*this); }
  double norm() const { return std::sqrt(norm2()); }
};

inline VecN operator*(double s, const VecN& v) { return v * s; }

}  // namespace waistkit
