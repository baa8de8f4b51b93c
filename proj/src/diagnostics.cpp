#include "cnls/diagnostics.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cnls {

double mass(const ComplexField& psi, const Grid& grid) {
  if (psi.shape() != grid.shape()) {
    throw std::invalid_argument("field shape does not match the grid");
  }
  double sum = 0.0;
  for (const auto& v : psi) sum += std::norm(v);
  return grid.cell_volume() * sum;
}

double energy(std::span<const ComplexField> fields, const Grid& grid,
              const SpectralTransform& transform,
              const SystemCoefficients& coeffs, double mu) {
  const std::size_t m = fields.size();
  if (m == 0 || m % 2 != 0) {
    throw std::invalid_argument("energy needs an even number of components");
  }
  if (!(mu > 0.0)) throw std::invalid_argument("energy needs mu > 0");
  if (coeffs.components() != m) {
    throw std::invalid_argument("component count does not match coefficients");
  }

  double kinetic = 0.0;
  for (const auto& psi : fields) {
    const ComplexField lap = apply_laplacian(psi, grid.symbol(), transform);
    for (std::size_t i = 0; i < psi.size(); ++i) {
      kinetic += (std::conj(psi[i]) * lap[i]).real();
    }
  }

  double quartic = 0.0;
  for (std::size_t j = 0; j < m; ++j) {
    const double b = coeffs.sigma[j][j];
    for (const auto& v : fields[j]) quartic += b * std::norm(v) * std::norm(v);
  }
  for (std::size_t p = 0; p + 1 < m; p += 2) {
    const double e = coeffs.sigma[p][p + 1];
    for (std::size_t i = 0; i < fields[p].size(); ++i) {
      quartic += 2.0 * e * std::norm(fields[p][i]) * std::norm(fields[p + 1][i]);
    }
  }

  const double dv = grid.cell_volume();
  return dv * (kinetic / (2.0 * mu) - 0.25 * quartic);
}

double linf_error(const ComplexField& numeric, const ComplexField& reference) {
  if (numeric.shape() != reference.shape()) {
    throw std::invalid_argument("fields differ in shape");
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < numeric.size(); ++i) {
    worst = std::max(worst, std::abs(numeric[i] - reference[i]));
  }
  return worst;
}

double linf_modulus_error(const ComplexField& numeric,
                          const ComplexField& reference) {
  if (numeric.shape() != reference.shape()) {
    throw std::invalid_argument("fields differ in shape");
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < numeric.size(); ++i) {
    worst = std::max(worst, std::abs(std::abs(numeric[i]) - std::abs(reference[i])));
  }
  return worst;
}

std::vector<double> convergence_order(std::span<const double> errors) {
  if (errors.size() < 2) {
    throw std::invalid_argument("convergence order needs at least two errors");
  }
  for (double e : errors) {
    if (!(e > 0.0) || !std::isfinite(e)) {
      throw std::invalid_argument("errors must be positive and finite");
    }
  }
  std::vector<double> order;
  for (std::size_t i = 1; i < errors.size(); ++i) {
    order.push_back(std::log2(errors[i - 1] / errors[i]));
  }
  return order;
}

std::string csv_header(std::size_t components) {
  std::string header = "t";
  for (std::size_t j = 1; j <= components; ++j) header += fmt::format(",I_{}", j);
  header += ",E,err";
  return header;
}

std::string csv_row(const DiagnosticRecord& record) {
  std::string row = fmt::format("{:.17g}", record.time);
  for (double m : record.mass) row += fmt::format(",{:.17g}", m);
  row += record.energy ? fmt::format(",{:.17g}", *record.energy) : ",";
  row += record.linf_error ? fmt::format(",{:.17g}", *record.linf_error) : ",";
  return row;
}

}  // namespace cnls
