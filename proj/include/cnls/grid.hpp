#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "cnls/field.hpp"

namespace cnls {

/// Homogeneous boundary condition shared by every axis of the box.
enum class BoundaryCondition { Periodic, Dirichlet, Neumann };

std::string_view to_string(BoundaryCondition bc);
/// Accepts "periodic", "dirichlet", "neumann" (case-insensitive).
BoundaryCondition parse_boundary_condition(std::string_view name);

/// Uniform mesh on [a, b] together with the eigenvalues of -d^2/dx^2 for
/// the matching eigenbasis. Eigenvalues are stored in transform order.
struct AxisGrid {
  BoundaryCondition bc = BoundaryCondition::Periodic;
  double a = 0.0;
  double b = 0.0;
  std::size_t n = 0;
  double h = 0.0;
  std::vector<double> points;
  std::vector<double> eigenvalues;

  double length() const { return b - a; }
};

/// Periodic:  h = L/N, x_i = a + i h (i = 0..N-1), wavenumbers in DFT order.
/// Dirichlet: h = L/(N+1), interior points, lambda = ((g+1) pi / L)^2.
/// Neumann:   h = L/N, cell centres, lambda = (g pi / L)^2.
/// Throws std::invalid_argument for N < 2, odd N with Periodic, b <= a or
/// non-finite endpoints.
AxisGrid build_axis(BoundaryCondition bc, double a, double b, std::size_t n);

/// Symbol of -Laplacian on the tensor grid: sum of per-axis eigenvalues.
struct LaplacianSymbol {
  Shape shape;
  std::vector<double> values;

  std::size_t dims() const { return shape.rank(); }
};

LaplacianSymbol laplacian_symbol(std::span<const AxisGrid> axes);

/// Tensor-product grid in 1, 2 or 3 dimensions with one boundary condition.
class Grid {
 public:
  explicit Grid(std::vector<AxisGrid> axes);

  /// Same interval and resolution on every axis (the setup used throughout).
  static Grid cube(BoundaryCondition bc, std::size_t dims, double a, double b,
                   std::size_t n);

  std::size_t dims() const { return axes_.size(); }
  BoundaryCondition bc() const { return axes_.front().bc; }
  const AxisGrid& axis(std::size_t i) const { return axes_.at(i); }
  std::span<const AxisGrid> axes() const { return axes_; }
  const Shape& shape() const { return symbol_.shape; }
  std::size_t size() const { return symbol_.values.size(); }
  const LaplacianSymbol& symbol() const { return symbol_; }

  /// Product of axis spacings; the weight of the rectangle rule.
  double cell_volume() const { return cell_volume_; }

  /// Physical coordinates of the grid point with row-major index `flat`.
  /// Unused trailing entries are zero.
  std::array<double, 3> coordinates(std::size_t flat) const;

 private:
  std::vector<AxisGrid> axes_;
  LaplacianSymbol symbol_;
  double cell_volume_ = 1.0;
};

}  // namespace cnls
