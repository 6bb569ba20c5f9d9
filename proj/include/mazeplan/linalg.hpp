#pragma once

#include <array>
#include <cmath>
#include <cstddef>

// Fixed-size 4x4 linear algebra for the position+velocity state blocks.
// Row-major storage throughout.

namespace mazeplan {

using Vec4 = std::array<double, 4>;
using Mat4 = std::array<double, 16>;

inline double& at(Mat4& m, int r, int c) { return m[static_cast<std::size_t>(4 * r + c)]; }
inline double at(const Mat4& m, int r, int c) { return m[static_cast<std::size_t>(4 * r + c)]; }

inline Mat4 mat4_zero() { return Mat4{}; }

inline Mat4 mat4_identity() {
  Mat4 m{};
  for (int i = 0; i < 4; ++i) at(m, i, i) = 1.0;
  return m;
}

inline Vec4 operator+(const Vec4& a, const Vec4& b) {
  return {a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]};
}
inline Vec4 operator-(const Vec4& a, const Vec4& b) {
  return {a[0] - b[0], a[1] - b[1], a[2] - b[2], a[3] - b[3]};
}
inline Vec4 operator*(double s, const Vec4& a) { return {s * a[0], s * a[1], s * a[2], s * a[3]}; }

inline double dot(const Vec4& a, const Vec4& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3];
}

inline Mat4 operator+(const Mat4& a, const Mat4& b) {
  Mat4 r;
  for (std::size_t i = 0; i < 16; ++i) r[i] = a[i] + b[i];
  return r;
}

inline Mat4 operator*(double s, const Mat4& a) {
  Mat4 r;
  for (std::size_t i = 0; i < 16; ++i) r[i] = s * a[i];
  return r;
}

inline Vec4 mat_vec(const Mat4& m, const Vec4& v) {
  Vec4 r{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) r[static_cast<std::size_t>(i)] += at(m, i, j) * v[static_cast<std::size_t>(j)];
  return r;
}

inline Mat4 mat_mul(const Mat4& a, const Mat4& b) {
  Mat4 r{};
  for (int i = 0; i < 4; ++i)
    for (int k = 0; k < 4; ++k) {
      const double aik = at(a, i, k);
      for (int j = 0; j < 4; ++j) at(r, i, j) += aik * at(b, k, j);
    }
  return r;
}

inline Mat4 transpose(const Mat4& m) {
  Mat4 r;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) at(r, i, j) = at(m, j, i);
  return r;
}

// Lower Cholesky factor of an SPD matrix. Returns false if a pivot is not
// strictly positive (matrix not positive definite to working precision).
inline bool cholesky_lower(const Mat4& a, Mat4& lower) {
  lower = mat4_zero();
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j <= i; ++j) {
      double s = at(a, i, j);
      for (int k = 0; k < j; ++k) s -= at(lower, i, k) * at(lower, j, k);
      if (i == j) {
        if (!(s > 0.0) || !std::isfinite(s)) return false;
        at(lower, i, i) = std::sqrt(s);
      } else {
        at(lower, i, j) = s / at(lower, j, j);
      }
    }
  }
  return true;
}

// x = L^-1 b (forward substitution).
inline Vec4 forward_subst(const Mat4& lower, const Vec4& b) {
  Vec4 x{};
  for (int i = 0; i < 4; ++i) {
    double s = b[static_cast<std::size_t>(i)];
    for (int k = 0; k < i; ++k) s -= at(lower, i, k) * x[static_cast<std::size_t>(k)];
    x[static_cast<std::size_t>(i)] = s / at(lower, i, i);
  }
  return x;
}

// x = L^-T b (back substitution against the transposed factor).
inline Vec4 backward_subst(const Mat4& lower, const Vec4& b) {
  Vec4 x{};
  for (int i = 3; i >= 0; --i) {
    double s = b[static_cast<std::size_t>(i)];
    for (int k = i + 1; k < 4; ++k) s -= at(lower, k, i) * x[static_cast<std::size_t>(k)];
    x[static_cast<std::size_t>(i)] = s / at(lower, i, i);
  }
  return x;
}

// Solve A x = b for SPD A via Cholesky.
inline bool solve_spd(const Mat4& a, const Vec4& b, Vec4& x) {
  Mat4 lower;
  if (!cholesky_lower(a, lower)) return false;
  x = backward_subst(lower, forward_subst(lower, b));
  return true;
}

// M = L^-1 A, column by column.
inline Mat4 forward_subst_mat(const Mat4& lower, const Mat4& a) {
  Mat4 r{};
  for (int c = 0; c < 4; ++c) {
    Vec4 col{at(a, 0, c), at(a, 1, c), at(a, 2, c), at(a, 3, c)};
    Vec4 sol = forward_subst(lower, col);
    for (int i = 0; i < 4; ++i) at(r, i, c) = sol[static_cast<std::size_t>(i)];
  }
  return r;
}

// A^-1 for SPD A.
inline bool invert_spd(const Mat4& a, Mat4& inv) {
  Mat4 lower;
  if (!cholesky_lower(a, lower)) return false;
  inv = mat4_zero();
  for (int c = 0; c < 4; ++c) {
    Vec4 e{};
    e[static_cast<std::size_t>(c)] = 1.0;
    Vec4 sol = backward_subst(lower, forward_subst(lower, e));
    for (int i = 0; i < 4; ++i) at(inv, i, c) = sol[static_cast<std::size_t>(i)];
  }
  return true;
}

}  // namespace mazeplan
