#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "cnls/field.hpp"
#include "cnls/grid.hpp"
#include "cnls/model.hpp"
#include "cnls/pade.hpp"
#include "cnls/transforms.hpp"

namespace cnls {

/// A step produced a non-finite value or exceeded the modulus threshold.
class DivergenceError : public std::runtime_error {
 public:
  DivergenceError(std::size_t step, const std::string& what)
      : std::runtime_error(what), step_(step) {}
  std::size_t step() const { return step_; }

 private:
  std::size_t step_;
};

/// Explicit (nonlinear) term evaluated in physical space on the complete
/// M-component stage state. Writes one output field per component.
using ExplicitTerm =
    std::function<void(std::span<const ComplexField>, std::span<ComplexField>)>;

/// Fourth-order exponential Runge-Kutta stepper for
///   dPsi_hat/dt + A Psi_hat = F_hat(Psi),  A diagonal in the transform basis.
/// Both schemes evaluate the explicit term on full stage states, so all
/// components are advanced together.
class ExponentialStepper {
 public:
  /// `tables[component_table[j]]` are the stage operators of component j.
  ExponentialStepper(StepperKind kind, SpectralTransform transform,
                     std::vector<StageTables> tables,
                     std::vector<std::size_t> component_table,
                     ExplicitTerm explicit_term);

  /// Stepper for the coupled cubic system on `grid`. One table set is built
  /// per distinct alpha_j.
  static ExponentialStepper for_system(StepperKind kind, double k,
                                       const Grid& grid,
                                       const SystemCoefficients& coeffs);

  StepperKind kind() const { return kind_; }
  double step_size() const { return tables_.front().k; }
  std::size_t components() const { return component_table_.size(); }
  std::size_t steps_taken() const { return steps_taken_; }
  std::size_t table_count() const { return tables_.size(); }
  const SpectralTransform& transform() const { return transform_; }

  /// Max |Psi| above which a step is reported as divergent.
  void set_divergence_threshold(double threshold) { threshold_ = threshold; }

  /// Advances `state` (physical space) by one step k. Throws DivergenceError
  /// carrying the 1-based step index on NaN/Inf or modulus > threshold.
  void step(SystemState& state);

 private:
  void krogstad_step(std::vector<ComplexField>& psi);
  void ifrk4_step(std::vector<ComplexField>& psi);
  void evaluate(std::span<const ComplexField> physical,
                std::vector<ComplexField>& spectral_out);
  void check_finite(const std::vector<ComplexField>& psi) const;
  const StageTables& tables_of(std::size_t component) const {
    return tables_[component_table_[component]];
  }

  StepperKind kind_;
  SpectralTransform transform_;
  std::vector<StageTables> tables_;
  std::vector<std::size_t> component_table_;
  ExplicitTerm explicit_term_;
  double threshold_ = 1e8;
  std::size_t steps_taken_ = 0;

  // Krogstad final-update weights combined per table:
  // P1 - 3P2 + P3, 2P2 - P3, P3 - P2.
  std::vector<std::vector<Complex>> w_n_, w_ab_, w_c_;

  // Workspace: spectral Psi_n and stage terms, physical stage state.
  std::vector<ComplexField> psi_hat_, f_n_, f_a_, f_b_, f_c_, stage_;
};

/// Callback invoked at step 0 and every `every` steps (and at the final step
/// when `every` does not divide the step count).
struct Observer {
  std::size_t every = 1;
  std::function<void(std::size_t step, const SystemState&)> notify;
};

/// Number of steps covering [0, T] with step k. Throws std::invalid_argument
/// unless T > 0, k > 0 and T is an integer multiple of k.
std::size_t step_count(double T, double k);

struct IntegrationResult {
  SystemState state;
  std::size_t steps = 0;
  std::vector<std::string> warnings;
};

IntegrationResult integrate(ExponentialStepper& stepper, SystemState state,
                            double T, std::span<const Observer> observers = {});

}  // namespace cnls
