#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "zsl/grid.hpp"

namespace zsl {

enum class Repr { physical, spectral };

/// Throws UsageError if the two grids differ in shape or box size.
void require_same_grid(const Grid2D& a, const Grid2D& b);

/// Real samples on a grid, always in physical representation.
class RealField {
 public:
  RealField() = default;
  explicit RealField(GridPtr grid);
  RealField(GridPtr grid, std::vector<double> values);

  /// Samples f(x, y) at every grid node.
  template <class F>
  static RealField sample(GridPtr grid, F&& f) {
    RealField out(grid);
    const auto& g = *grid;
    for (int ix = 0; ix < g.nx(); ++ix) {
      for (int iy = 0; iy < g.ny(); ++iy) out.data_[g.index(ix, iy)] = f(g.x(ix), g.y(iy));
    }
    return out;
  }

  const GridPtr& grid_ptr() const noexcept { return grid_; }
  const Grid2D& grid() const noexcept { return *grid_; }
  std::size_t size() const noexcept { return data_.size(); }

  std::span<double> values() noexcept { return data_; }
  std::span<const double> values() const noexcept { return data_; }
  double& operator[](std::size_t i) noexcept { return data_[i]; }
  double operator[](std::size_t i) const noexcept { return data_[i]; }
  double& at(int ix, int iy) noexcept { return data_[grid_->index(ix, iy)]; }
  double at(int ix, int iy) const noexcept { return data_[grid_->index(ix, iy)]; }

  bool all_finite() const noexcept;

  RealField& operator+=(const RealField& o);
  RealField& operator-=(const RealField& o);
  RealField& operator*=(double s) noexcept;

  friend RealField operator+(RealField a, const RealField& b) { return a += b; }
  friend RealField operator-(RealField a, const RealField& b) { return a -= b; }
  friend RealField operator*(RealField a, double s) { return a *= s; }
  friend RealField operator*(double s, RealField a) { return a *= s; }

 private:
  GridPtr grid_;
  std::vector<double> data_;
};

/// Complex samples tagged with their representation. A spectral field holds
/// unnormalized DFT coefficients in the grid's mode ordering.
class ComplexField {
 public:
  ComplexField() = default;
  ComplexField(GridPtr grid, Repr repr);
  ComplexField(GridPtr grid, Repr repr, std::vector<cplx> values);
  /// Physical complex field with zero imaginary part.
  explicit ComplexField(const RealField& re);
  /// Physical complex field re + i im.
  ComplexField(const RealField& re, const RealField& im);

  template <class F>
  static ComplexField sample(GridPtr grid, F&& f) {
    ComplexField out(grid, Repr::physical);
    const auto& g = *grid;
    for (int ix = 0; ix < g.nx(); ++ix) {
      for (int iy = 0; iy < g.ny(); ++iy) out.data_[g.index(ix, iy)] = f(g.x(ix), g.y(iy));
    }
    return out;
  }

  const GridPtr& grid_ptr() const noexcept { return grid_; }
  const Grid2D& grid() const noexcept { return *grid_; }
  Repr repr() const noexcept { return repr_; }
  std::size_t size() const noexcept { return data_.size(); }

  std::span<cplx> values() noexcept { return data_; }
  std::span<const cplx> values() const noexcept { return data_; }
  cplx& operator[](std::size_t i) noexcept { return data_[i]; }
  const cplx& operator[](std::size_t i) const noexcept { return data_[i]; }
  cplx& at(int ix, int iy) noexcept { return data_[grid_->index(ix, iy)]; }
  const cplx& at(int ix, int iy) const noexcept { return data_[grid_->index(ix, iy)]; }

  bool all_finite() const noexcept;

  ComplexField& operator+=(const ComplexField& o);
  ComplexField& operator-=(const ComplexField& o);
  ComplexField& operator*=(cplx s) noexcept;

  friend ComplexField operator+(ComplexField a, const ComplexField& b) { return a += b; }
  friend ComplexField operator-(ComplexField a, const ComplexField& b) { return a -= b; }
  friend ComplexField operator*(ComplexField a, cplx s) { return a *= s; }
  friend ComplexField operator*(cplx s, ComplexField a) { return a *= s; }

 private:
  GridPtr grid_;
  Repr repr_ = Repr::physical;
  std::vector<cplx> data_;
};

/// Real 2-vector field (x and y components).
struct RealVectorField {
  RealField x;
  RealField y;

  RealVectorField() = default;
  explicit RealVectorField(const GridPtr& grid) : x(grid), y(grid) {}
  RealVectorField(RealField x_, RealField y_) : x(std::move(x_)), y(std::move(y_)) {}

  RealField& operator[](int i) noexcept { return i == 0 ? x : y; }
  const RealField& operator[](int i) const noexcept { return i == 0 ? x : y; }
  bool all_finite() const noexcept { return x.all_finite() && y.all_finite(); }

  RealVectorField& operator+=(const RealVectorField& o) {
    x += o.x;
    y += o.y;
    return *this;
  }
  RealVectorField& operator*=(double s) noexcept {
    x *= s;
    y *= s;
    return *this;
  }
};

RealField real_part(const ComplexField& f);
RealField imag_part(const ComplexField& f);

}  // namespace zsl
