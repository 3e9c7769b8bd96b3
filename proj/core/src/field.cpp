#include "zsl/field.hpp"

#include <algorithm>
#include <cmath>

#include "zsl/errors.hpp"

namespace zsl {

void require_same_grid(const Grid2D& a, const Grid2D& b) {
  if (&a != &b && !a.same_shape(b)) {
    throw UsageError("fields live on different grids");
  }
}

RealField::RealField(GridPtr grid) : grid_(std::move(grid)), data_(grid_->size(), 0.0) {}

RealField::RealField(GridPtr grid, std::vector<double> values)
    : grid_(std::move(grid)), data_(std::move(values)) {
  if (data_.size() != grid_->size()) throw UsageError("value count does not match grid size");
}

bool RealField::all_finite() const noexcept {
  return std::all_of(data_.begin(), data_.end(), [](double v) { return std::isfinite(v); });
}

RealField& RealField::operator+=(const RealField& o) {
  require_same_grid(*grid_, *o.grid_);
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
  return *this;
}

RealField& RealField::operator-=(const RealField& o) {
  require_same_grid(*grid_, *o.grid_);
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
  return *this;
}

RealField& RealField::operator*=(double s) noexcept {
  for (auto& v : data_) v *= s;
  return *this;
}

ComplexField::ComplexField(GridPtr grid, Repr repr)
    : grid_(std::move(grid)), repr_(repr), data_(grid_->size(), cplx{}) {}

ComplexField::ComplexField(GridPtr grid, Repr repr, std::vector<cplx> values)
    : grid_(std::move(grid)), repr_(repr), data_(std::move(values)) {
  if (data_.size() != grid_->size()) throw UsageError("value count does not match grid size");
}

ComplexField::ComplexField(const RealField& re)
    : grid_(re.grid_ptr()), repr_(Repr::physical), data_(re.size()) {
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] = re[i];
}

ComplexField::ComplexField(const RealField& re, const RealField& im)
    : grid_(re.grid_ptr()), repr_(Repr::physical), data_(re.size()) {
  require_same_grid(re.grid(), im.grid());
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] = {re[i], im[i]};
}

bool ComplexField::all_finite() const noexcept {
  return std::all_of(data_.begin(), data_.end(), [](const cplx& v) {
    return std::isfinite(v.real()) && std::isfinite(v.imag());
  });
}

ComplexField& ComplexField::operator+=(const ComplexField& o) {
  require_same_grid(*grid_, *o.grid_);
  if (repr_ != o.repr_) throw UsageError("cannot add fields in different representations");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
  return *this;
}

ComplexField& ComplexField::operator-=(const ComplexField& o) {
  require_same_grid(*grid_, *o.grid_);
  if (repr_ != o.repr_) throw UsageError("cannot subtract fields in different representations");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
  return *this;
}

ComplexField& ComplexField::operator*=(cplx s) noexcept {
  for (auto& v : data_) v *= s;
  return *this;
}

RealField real_part(const ComplexField& f) {
  if (f.repr() != Repr::physical) throw UsageError("real_part expects a physical field");
  RealField out(f.grid_ptr());
  for (std::size_t i = 0; i < f.size(); ++i) out[i] = f[i].real();
  return out;
}

RealField imag_part(const ComplexField& f) {
  if (f.repr() != Repr::physical) throw UsageError("imag_part expects a physical field");
  RealField out(f.grid_ptr());
  for (std::size_t i = 0; i < f.size(); ++i) out[i] = f[i].imag();
  return out;
}

}  // namespace zsl
