#pragma once

#include <memory>
#include <vector>

namespace dwlab {

// Uniform radial mesh for an exterior domain {|x| >= r0} in R^dim,
// truncated at r_max. Node i sits at r0 + i*dr with dr = (r_max-r0)/(n-1);
// node 0 carries the obstacle boundary, node n-1 the artificial far boundary.
class RadialGrid {
 public:
  RadialGrid(double r0, double r_max, int n, int dim);

  double r0() const { return r0_; }
  double r_max() const { return r_max_; }
  int size() const { return n_; }
  int dim() const { return dim_; }
  double dr() const { return dr_; }
  double node(int i) const { return r0_ + dr_ * i; }

  // Surface measure of the unit sphere in R^dim: 2 pi^{dim/2} / Gamma(dim/2).
  double sphere_area() const { return sphere_area_; }

  // Largest index with node(i) <= r, clamped to [0, n-1].
  int index_below(double r) const;

 private:
  double r0_;
  double r_max_;
  int n_;
  int dim_;
  double dr_;
  double sphere_area_;
};

using GridPtr = std::shared_ptr<const RadialGrid>;

// Validates r0 > 0, r_max > r0, n >= 16, dim >= 2; throws std::invalid_argument.
GridPtr build_grid(double r0, double r_max, int n, int dim);

// Scalar samples bound to the grid they were taken on.
class Field {
 public:
  Field() = default;
  Field(GridPtr grid, std::vector<double> values);
  static Field zeros(GridPtr grid);

  int size() const { return static_cast<int>(values_.size()); }
  double operator[](int i) const { return values_[i]; }
  double& operator[](int i) { return values_[i]; }
  const std::vector<double>& values() const { return values_; }
  std::vector<double>& values() { return values_; }
  const RadialGrid& grid() const { return *grid_; }
  const GridPtr& grid_ptr() const { return grid_; }

 private:
  GridPtr grid_;
  std::vector<double> values_;
};

// Throws std::invalid_argument unless both fields share one grid object.
void require_same_grid(const Field& a, const Field& b);

}  // namespace dwlab
