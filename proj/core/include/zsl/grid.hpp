#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <vector>

namespace zsl {

using cplx = std::complex<double>;

namespace detail {
class FftPlans;
}

/// Periodic box [-lx/2, lx/2) x [-ly/2, ly/2) sampled on nx x ny points.
///
/// Storage order for every field on the grid is row-major in (ix, iy), i.e.
/// flat index ix * ny + iy. Mode tables follow the usual FFT ordering: index
/// j < n/2 carries integer frequency j, index j >= n/2 carries j - n, so the
/// Nyquist frequency -n/2 sits at index n/2.
///
/// Transform plans are built once at construction and shared by copies; the
/// forward/inverse calls are safe to use from several threads at once.
class Grid2D {
 public:
  Grid2D(int nx, int ny, double lx, double ly);

  int nx() const noexcept { return nx_; }
  int ny() const noexcept { return ny_; }
  double lx() const noexcept { return lx_; }
  double ly() const noexcept { return ly_; }
  double dx() const noexcept { return dx_; }
  double dy() const noexcept { return dy_; }
  double area() const noexcept { return lx_ * ly_; }
  double cell_area() const noexcept { return dx_ * dy_; }
  std::size_t size() const noexcept {
    return static_cast<std::size_t>(nx_) * static_cast<std::size_t>(ny_);
  }
  std::size_t index(int ix, int iy) const noexcept {
    return static_cast<std::size_t>(ix) * static_cast<std::size_t>(ny_) +
           static_cast<std::size_t>(iy);
  }

  // x = (ix - nx/2) dx: integer multiples of dx, so mirrored points are
  // exact negatives of each other.
  double x(int ix) const noexcept { return (ix - nx_ / 2) * dx_; }
  double y(int iy) const noexcept { return (iy - ny_ / 2) * dy_; }

  int mode_x(int ix) const noexcept { return ix < nx_ / 2 ? ix : ix - nx_; }
  int mode_y(int iy) const noexcept { return iy < ny_ / 2 ? iy : iy - ny_; }
  bool nyquist_x(int ix) const noexcept { return ix == nx_ / 2; }
  bool nyquist_y(int iy) const noexcept { return iy == ny_ / 2; }

  /// Wavenumbers (2 pi / L) m, Nyquist included.
  const std::vector<double>& kx() const noexcept { return kx_; }
  const std::vector<double>& ky() const noexcept { return ky_; }
  /// Wavenumbers used by odd derivatives: Nyquist entry set to zero.
  const std::vector<double>& kx_deriv() const noexcept { return kx_deriv_; }
  const std::vector<double>& ky_deriv() const noexcept { return ky_deriv_; }

  /// Largest |k| represented on the grid.
  double k_max() const noexcept;

  /// In-place unnormalized forward DFT (e^{-i k x} kernel).
  void forward(cplx* data) const;
  /// In-place inverse DFT including the 1/(nx ny) factor.
  void inverse(cplx* data) const;

  bool same_shape(const Grid2D& other) const noexcept {
    return nx_ == other.nx_ && ny_ == other.ny_ && lx_ == other.lx_ && ly_ == other.ly_;
  }

 private:
  int nx_;
  int ny_;
  double lx_;
  double ly_;
  double dx_;
  double dy_;
  std::vector<double> kx_;
  std::vector<double> ky_;
  std::vector<double> kx_deriv_;
  std::vector<double> ky_deriv_;
  std::shared_ptr<const detail::FftPlans> plans_;
};

using GridPtr = std::shared_ptr<const Grid2D>;

/// Validates and builds a grid. Throws UsageError unless nx, ny are even
/// and >= 8 and the box lengths are positive and finite.
GridPtr make_grid(int nx, int ny, double lx, double ly);

}  // namespace zsl
