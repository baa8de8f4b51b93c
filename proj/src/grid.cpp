#include "cnls/grid.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace cnls {

std::string_view to_string(BoundaryCondition bc) {
  switch (bc) {
    case BoundaryCondition::Periodic:
      return "periodic";
    case BoundaryCondition::Dirichlet:
      return "dirichlet";
    case BoundaryCondition::Neumann:
      return "neumann";
  }
  return "unknown";
}

BoundaryCondition parse_boundary_condition(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  if (lower == "periodic") return BoundaryCondition::Periodic;
  if (lower == "dirichlet") return BoundaryCondition::Dirichlet;
  if (lower == "neumann") return BoundaryCondition::Neumann;
  throw std::invalid_argument("unknown boundary condition '" +
                              std::string(name) + "'");
}

AxisGrid build_axis(BoundaryCondition bc, double a, double b, std::size_t n) {
  if (!std::isfinite(a) || !std::isfinite(b)) {
    throw std::invalid_argument("axis endpoints must be finite");
  }
  if (!(b > a)) throw std::invalid_argument("axis requires b > a");
  if (n < 2) throw std::invalid_argument("axis requires at least 2 points");
  if (bc == BoundaryCondition::Periodic && n % 2 != 0) {
    throw std::invalid_argument("periodic axis requires an even point count");
  }

  constexpr double pi = std::numbers::pi;
  AxisGrid axis;
  axis.bc = bc;
  axis.a = a;
  axis.b = b;
  axis.n = n;
  axis.points.resize(n);
  axis.eigenvalues.resize(n);
  const double length = b - a;

  switch (bc) {
    case BoundaryCondition::Periodic: {
      axis.h = length / static_cast<double>(n);
      const auto half = static_cast<long>(n / 2);
      for (std::size_t i = 0; i < n; ++i) {
        axis.points[i] = a + static_cast<double>(i) * axis.h;
        // DFT ordering: 0, 1, ..., N/2, -N/2+1, ..., -1
        const long g = static_cast<long>(i) <= half
                           ? static_cast<long>(i)
                           : static_cast<long>(i) - static_cast<long>(n);
        const double wavenumber = 2.0 * pi * static_cast<double>(g) / length;
        axis.eigenvalues[i] = wavenumber * wavenumber;
      }
      break;
    }
    case BoundaryCondition::Dirichlet: {
      axis.h = length / static_cast<double>(n + 1);
      for (std::size_t i = 0; i < n; ++i) {
        axis.points[i] = a + static_cast<double>(i + 1) * axis.h;
        const double w = static_cast<double>(i + 1) * pi / length;
        axis.eigenvalues[i] = w * w;
      }
      break;
    }
    case BoundaryCondition::Neumann: {
      axis.h = length / static_cast<double>(n);
      for (std::size_t i = 0; i < n; ++i) {
        axis.points[i] = a + (static_cast<double>(i) + 0.5) * axis.h;
        const double w = static_cast<double>(i) * pi / length;
        axis.eigenvalues[i] = w * w;
      }
      break;
    }
  }
  return axis;
}

LaplacianSymbol laplacian_symbol(std::span<const AxisGrid> axes) {
  if (axes.empty() || axes.size() > 3) {
    throw std::invalid_argument("laplacian symbol supports 1 to 3 dimensions");
  }
  std::vector<std::size_t> extents;
  for (const auto& axis : axes) extents.push_back(axis.n);
  LaplacianSymbol symbol{Shape(extents), {}};
  symbol.values.assign(symbol.shape.size(), 0.0);

  // Accumulate axis by axis; stride of axis d is the product of later extents.
  std::size_t stride = symbol.values.size();
  for (const auto& axis : axes) {
    stride /= axis.n;
    for (std::size_t flat = 0; flat < symbol.values.size(); ++flat) {
      symbol.values[flat] += axis.eigenvalues[(flat / stride) % axis.n];
    }
  }
  return symbol;
}

Grid::Grid(std::vector<AxisGrid> axes) : axes_(std::move(axes)) {
  if (axes_.empty() || axes_.size() > 3) {
    throw std::invalid_argument("grid supports 1 to 3 dimensions");
  }
  for (const auto& axis : axes_) {
    if (axis.bc != axes_.front().bc) {
      throw std::invalid_argument("all axes must share one boundary condition");
    }
    cell_volume_ *= axis.h;
  }
  symbol_ = laplacian_symbol(axes_);
}

Grid Grid::cube(BoundaryCondition bc, std::size_t dims, double a, double b,
                std::size_t n) {
  if (dims < 1 || dims > 3) {
    throw std::invalid_argument("grid supports 1 to 3 dimensions");
  }
  std::vector<AxisGrid> axes(dims, build_axis(bc, a, b, n));
  return Grid(std::move(axes));
}

std::array<double, 3> Grid::coordinates(std::size_t flat) const {
  std::array<double, 3> x{0.0, 0.0, 0.0};
  for (std::size_t d = dims(); d-- > 0;) {
    const auto& axis = axes_[d];
    x[d] = axis.points[flat % axis.n];
    flat /= axis.n;
  }
  return x;
}

}  // namespace cnls
