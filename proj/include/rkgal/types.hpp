#pragma once

#include <Eigen/Dense>

namespace rkgal {

using Scalar = double;

template <typename T>
using DynamicMatrix = Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic>;
template <typename T>
using DynamicVector = Eigen::Matrix<T, Eigen::Dynamic, 1>;

using Matrix = DynamicMatrix<Scalar>;
using Vector = DynamicVector<Scalar>;

/// Symmetric integer window {-L, ..., L} with the flat storage map i -> i + L.
struct IndexWindow {
  int halfwidth = 0;

  int size() const { return 2 * halfwidth + 1; }
  int to_flat(int i) const { return i + halfwidth; }
  int from_flat(int k) const { return k - halfwidth; }
  bool contains(int i) const { return i >= -halfwidth && i <= halfwidth; }
};

/// Closed interval [a, b].
struct Interval {
  Scalar a = 0;
  Scalar b = 0;

  Scalar length() const { return b - a; }
  bool empty() const { return !(a < b); }
};

/// Uniform evaluation grid: points start, start+step, ..., start+(count-1)*step.
struct UniformGrid {
  Scalar start = 0;
  Scalar step = 0;
  int count = 0;

  Scalar point(int k) const { return start + k * step; }
  Vector points() const {
    Vector p(count);
    for (int k = 0; k < count; ++k) p(k) = point(k);
    return p;
  }
};

/// Grid covering [a, b] with spacing <= step and both endpoints included.
inline UniformGrid cover_interval(Scalar a, Scalar b, Scalar step) {
  const int n = std::max(2, static_cast<int>(std::ceil((b - a) / step)) + 1);
  return UniformGrid{a, (b - a) / (n - 1), n};
}

}  // namespace rkgal
