#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cnls/field.hpp"
#include "cnls/grid.hpp"
#include "cnls/model.hpp"
#include "cnls/transforms.hpp"

namespace cnls {

/// Rectangle-rule mass h^d sum |Psi|^2.
double mass(const ComplexField& psi, const Grid& grid);

/// Energy functional for an even number of components:
///   E = 1/(2 mu) h^d sum_i Re(conj(Psi_i) (-Lap) Psi_i)
///       - 1/4 h^d sum [ sum_i b_i |Psi_i|^4
///                       + 2 sum_{pairs} e_p |Psi_{2p-1}|^2 |Psi_{2p}|^2 ]
/// with b_i = sigma_ii and e_p = sigma_{2p-1,2p}. Only the pairs (1,2),
/// (3,4), ... enter the cross term. -Lap is applied spectrally.
/// Throws std::invalid_argument for odd M or mu <= 0.
double energy(std::span<const ComplexField> fields, const Grid& grid,
              const SpectralTransform& transform,
              const SystemCoefficients& coeffs, double mu);

/// max_i |numeric_i - reference_i|
double linf_error(const ComplexField& numeric, const ComplexField& reference);

/// max_i | |numeric_i| - |reference_i| |, blind to phase. The published
/// convergence tables use this norm.
double linf_modulus_error(const ComplexField& numeric,
                          const ComplexField& reference);

/// order_i = log2(errors[i-1] / errors[i]). Works equally on errors against
/// an exact solution and on successive-difference norms. Needs at least two
/// strictly positive entries.
std::vector<double> convergence_order(std::span<const double> errors);

struct DiagnosticRecord {
  double time = 0.0;
  std::vector<double> mass;
  std::optional<double> energy;
  std::optional<double> linf_error;
};

/// "t,I_1,...,I_M,E,err"
std::string csv_header(std::size_t components);
/// Missing energy or error are written as empty cells.
std::string csv_row(const DiagnosticRecord& record);

}  // namespace cnls
