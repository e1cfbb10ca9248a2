#include "dwlab/grid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace dwlab {

RadialGrid::RadialGrid(double r0, double r_max, int n, int dim)
    : r0_(r0), r_max_(r_max), n_(n), dim_(dim) {
  if (!(r0 > 0.0)) {
    throw std::invalid_argument("grid: r0 must be positive, got " + std::to_string(r0));
  }
  if (!(r_max > r0)) {
    throw std::invalid_argument("grid: r_max must exceed r0");
  }
  if (n < 16) {
    throw std::invalid_argument("grid: need at least 16 nodes, got " + std::to_string(n));
  }
  if (dim < 2) {
    throw std::invalid_argument("grid: dim must be >= 2, got " + std::to_string(dim));
  }
  dr_ = (r_max - r0) / static_cast<double>(n - 1);
  sphere_area_ = 2.0 * std::pow(std::numbers::pi, 0.5 * dim) / std::tgamma(0.5 * dim);
}

int RadialGrid::index_below(double r) const {
  // Adjusted against node() so that node(i) <= r < node(i+1) holds in the
  // same floating-point arithmetic callers use to classify nodes.
  int i = static_cast<int>(std::floor((r - r0_) / dr_));
  i = std::clamp(i, 0, n_ - 1);
  while (i + 1 < n_ && node(i + 1) <= r) ++i;
  while (i > 0 && node(i) > r) --i;
  return i;
}

GridPtr build_grid(double r0, double r_max, int n, int dim) {
  return std::make_shared<const RadialGrid>(r0, r_max, n, dim);
}

Field::Field(GridPtr grid, std::vector<double> values) : grid_(std::move(grid)), values_(std::move(values)) {
  if (!grid_) {
    throw std::invalid_argument("field: null grid");
  }
  if (static_cast<int>(values_.size()) != grid_->size()) {
    throw std::invalid_argument("field: value count does not match grid size");
  }
}

Field Field::zeros(GridPtr grid) {
  if (!grid) {
    throw std::invalid_argument("field: null grid");
  }
  std::vector<double> v(static_cast<size_t>(grid->size()), 0.0);
  return Field(std::move(grid), std::move(v));
}

void require_same_grid(const Field& a, const Field& b) {
  if (a.grid_ptr().get() != b.grid_ptr().get()) {
    throw std::invalid_argument("fields live on different grids");
  }
}

}  // namespace dwlab
