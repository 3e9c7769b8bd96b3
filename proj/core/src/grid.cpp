#include "zsl/grid.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <numbers>
#include <string>

#include "zsl/errors.hpp"

namespace zsl {
namespace detail {

// The FFTW planner is not thread-safe; execution with the new-array
// interface is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

class FftPlans {
 public:
  FftPlans(int nx, int ny) : n_(static_cast<std::size_t>(nx) * ny) {
    std::lock_guard lock(planner_mutex());
    auto* scratch = fftw_alloc_complex(n_);
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    forward_ = fftw_plan_dft_2d(nx, ny, scratch, scratch, FFTW_FORWARD, flags);
    inverse_ = fftw_plan_dft_2d(nx, ny, scratch, scratch, FFTW_BACKWARD, flags);
    fftw_free(scratch);
    if (forward_ == nullptr || inverse_ == nullptr) {
      throw std::runtime_error("FFTW planning failed");
    }
  }
  ~FftPlans() {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(forward_);
    fftw_destroy_plan(inverse_);
  }
  FftPlans(const FftPlans&) = delete;
  FftPlans& operator=(const FftPlans&) = delete;

  void forward(cplx* data) const {
    auto* p = reinterpret_cast<fftw_complex*>(data);
    fftw_execute_dft(forward_, p, p);
  }
  void inverse(cplx* data) const {
    auto* p = reinterpret_cast<fftw_complex*>(data);
    fftw_execute_dft(inverse_, p, p);
    const double scale = 1.0 / static_cast<double>(n_);
    for (std::size_t i = 0; i < n_; ++i) data[i] *= scale;
  }

 private:
  std::size_t n_;
  fftw_plan forward_ = nullptr;
  fftw_plan inverse_ = nullptr;
};

}  // namespace detail

namespace {

std::vector<double> wavenumbers(int n, double length, bool zero_nyquist) {
  std::vector<double> k(static_cast<std::size_t>(n));
  const double base = 2.0 * std::numbers::pi / length;
  for (int j = 0; j < n; ++j) {
    const int m = j < n / 2 ? j : j - n;
    k[static_cast<std::size_t>(j)] = (zero_nyquist && j == n / 2) ? 0.0 : base * m;
  }
  return k;
}

}  // namespace

Grid2D::Grid2D(int nx, int ny, double lx, double ly)
    : nx_(nx), ny_(ny), lx_(lx), ly_(ly) {
  if (nx < 8 || ny < 8 || nx % 2 != 0 || ny % 2 != 0) {
    throw UsageError("grid point counts must be even and >= 8, got " +
                     std::to_string(nx) + " x " + std::to_string(ny));
  }
  if (!(std::isfinite(lx) && std::isfinite(ly) && lx > 0.0 && ly > 0.0)) {
    throw UsageError("grid box lengths must be positive and finite");
  }
  dx_ = lx / nx;
  dy_ = ly / ny;
  kx_ = wavenumbers(nx, lx, false);
  ky_ = wavenumbers(ny, ly, false);
  kx_deriv_ = wavenumbers(nx, lx, true);
  ky_deriv_ = wavenumbers(ny, ly, true);
  plans_ = std::make_shared<const detail::FftPlans>(nx, ny);
}

double Grid2D::k_max() const noexcept {
  const double kx = std::numbers::pi / dx_;
  const double ky = std::numbers::pi / dy_;
  return std::sqrt(kx * kx + ky * ky);
}

void Grid2D::forward(cplx* data) const { plans_->forward(data); }
void Grid2D::inverse(cplx* data) const { plans_->inverse(data); }

GridPtr make_grid(int nx, int ny, double lx, double ly) {
  return std::make_shared<const Grid2D>(nx, ny, lx, ly);
}

}  // namespace zsl
