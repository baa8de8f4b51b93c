#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <variant>
#include <vector>

#include "cnls/field.hpp"
#include "cnls/grid.hpp"

namespace cnls {

/// Coefficients of the M-component cubic system
///   i dPsi_j/dt - alpha_j (-Lap) Psi_j + (sum_m sigma_jm |Psi_m|^2) Psi_j = 0.
struct SystemCoefficients {
  std::vector<double> alpha;               // dispersion per component
  std::vector<std::vector<double>> sigma;  // M x M self/cross phase

  std::size_t components() const { return alpha.size(); }

  /// Throws std::invalid_argument unless M >= 1, sigma is M x M and every
  /// entry is finite.
  void validate() const;

  /// alpha_j = a for all j, sigma_jj = self, sigma_jm = cross.
  static SystemCoefficients uniform(std::size_t m, double a, double self,
                                    double cross);
};

struct SystemState {
  double time = 0.0;
  std::vector<ComplexField> fields;

  std::size_t components() const { return fields.size(); }
};

/// G_j = i (sum_m sigma_jm |Psi_m|^2) Psi_j, pointwise. Every output is
/// computed from the same input components; `out` may not alias `state`.
void nonlinear_rhs(std::span<const ComplexField> state,
                   const SystemCoefficients& coeffs,
                   std::span<ComplexField> out);

std::vector<ComplexField> nonlinear_rhs(const SystemState& state,
                                        const SystemCoefficients& coeffs);

// -- initial conditions ------------------------------------------------------

/// Two identical components sqrt(mu a/(1+e)) sech(sqrt(mu a) x) exp(i v x).
struct SingleSoliton {
  double mu = 2.0;
  double alpha = 1.0;
  double e = 2.0 / 3.0;
  double v = 1.0;
};

/// sqrt(2) r sech(r x + shift) exp(i v x). Signs are carried in the
/// parameters, so sech(r x - x0) exp(-i v x) is {r, -x0, -v}.
struct SechPulse {
  double r = 1.0;
  double shift = 0.0;
  double v = 0.0;
};

struct TwoSoliton {
  std::array<SechPulse, 2> pulses{SechPulse{1.2, 30.0, 0.25},
                                  SechPulse{1.0, -30.0, -0.25}};
};

struct FourSoliton {
  std::array<SechPulse, 4> pulses{
      SechPulse{1.0, 10.0, 0.125}, SechPulse{1.2, -10.0, -0.125},
      SechPulse{1.3, 30.0, 0.25}, SechPulse{1.4, -30.0, -0.25}};
};

/// Four chirped Gaussians (2/sqrt(pi)) exp(-|x - c s_j|^2) exp(-i |x|^2) with
/// centre sign patterns (+,+), (-,-), (+,-), (-,+).
struct FourWave2D {
  double c = 3.0;
};

/// 3D analogue with sign patterns (+,+,+), (-,-,-), (+,-,+), (-,+,-).
struct FourWave3D {
  double c = 3.0;
};

/// exp(2i(x+10)) sech(x+10) + exp(-2i(x-10)) sech(x-10), one component.
struct BlowUpPair {};

/// Externally sampled fields (see io.hpp for the file format).
struct CustomFields {
  std::vector<ComplexField> fields;
};

using InitialCondition = std::variant<SingleSoliton, TwoSoliton, FourSoliton,
                                      FourWave2D, FourWave3D, BlowUpPair,
                                      CustomFields>;

/// Number of components the preset produces.
std::size_t component_count(const InitialCondition& ic);

/// Evaluates the preset on the grid at t = 0. Throws std::invalid_argument
/// for a dimension mismatch or nonphysical parameters.
SystemState make_initial(const InitialCondition& ic, const Grid& grid);

/// Travelling soliton solution of the single-soliton system:
/// sqrt(mu a/(1+e)) sech(sqrt(mu a)(x - v t)) exp(i(v x - (v^2/2 - a) t)).
Complex exact_single_soliton(double x, double t, const SingleSoliton& p);

/// The exact solution sampled on every point of a 1D grid.
ComplexField exact_single_soliton(const Grid& grid, double t,
                                  const SingleSoliton& p);

/// Coefficients paired with SingleSoliton: alpha_j = 1/mu, sigma_jj = 1,
/// sigma_12 = e.
SystemCoefficients single_soliton_coefficients(const SingleSoliton& p);

}  // namespace cnls
