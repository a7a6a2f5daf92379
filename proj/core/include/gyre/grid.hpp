#pragma once

#include <algorithm>
#include <cstddef>
#include <span>
#include <vector>

namespace gyre {

/// Width of the ghost layer on every side of the grid.
inline constexpr int kGhost = 2;

/// Depths at or below this value abort the run.
inline constexpr double kDepthFloor = 1e-12;

/// Uniform structured grid. Interior cells are numbered 1..nx and 1..ny;
/// ghost cells use 0, -1 and nx+1, nx+2 (likewise in y).
struct Grid {
  int nx = 1;
  int ny = 1;
  double dx = 1.0;
  double dy = 1.0;
  double x0 = 0.0;  // lower-left corner of the domain
  double y0 = 0.0;

  /// Builds a grid covering [x_min, x_max] x [y_min, y_max]; throws
  /// ConfigError on non-positive extents or cell counts.
  static Grid over(int nx, int ny, double x_min, double x_max, double y_min,
                   double y_max);

  double xc(int i) const { return x0 + (i - 0.5) * dx; }
  double yc(int j) const { return y0 + (j - 0.5) * dy; }
  double x_length() const { return nx * dx; }
  double y_length() const { return ny * dy; }
  double cell_area() const { return dx * dy; }

  int stride() const { return nx + 2 * kGhost; }
  std::size_t storage_size() const {
    return static_cast<std::size_t>(nx + 2 * kGhost) *
           static_cast<std::size_t>(ny + 2 * kGhost);
  }

  bool same_shape(const Grid& other) const {
    return nx == other.nx && ny == other.ny;
  }
  friend bool operator==(const Grid&, const Grid&) = default;
};

/// Cell-centered data over interior and ghost cells, stored row-major with x
/// varying fastest.
template <class T>
class Field {
 public:
  Field() = default;
  explicit Field(const Grid& grid, const T& init = T{})
      : grid_(grid), stride_(grid.stride()), data_(grid.storage_size(), init) {}

  const Grid& grid() const { return grid_; }
  int nx() const { return grid_.nx; }
  int ny() const { return grid_.ny; }

  std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(j + kGhost - 1) * stride_ +
           static_cast<std::size_t>(i + kGhost - 1);
  }
  T& operator()(int i, int j) { return data_[index(i, j)]; }
  const T& operator()(int i, int j) const { return data_[index(i, j)]; }

  std::span<T> raw() { return data_; }
  std::span<const T> raw() const { return data_; }

  /// Pointer to cell (-1, j); a row holds nx + 4 entries.
  T* row(int j) { return data_.data() + index(1 - kGhost, j); }
  const T* row(int j) const { return data_.data() + index(1 - kGhost, j); }

  void fill(const T& value) { std::fill(data_.begin(), data_.end(), value); }

  template <class F>
  void for_each_interior(F&& f) {
    for (int j = 1; j <= grid_.ny; ++j)
      for (int i = 1; i <= grid_.nx; ++i) f(i, j, (*this)(i, j));
  }
  template <class F>
  void for_each_interior(F&& f) const {
    for (int j = 1; j <= grid_.ny; ++j)
      for (int i = 1; i <= grid_.nx; ++i) f(i, j, (*this)(i, j));
  }

 private:
  Grid grid_{};
  int stride_ = 0;
  std::vector<T> data_;
};

using ScalarField = Field<double>;

}  // namespace gyre
