#include "cnls/steppers.hpp"

#include <cmath>
#include <map>
#include <sstream>

namespace cnls {

ExponentialStepper::ExponentialStepper(StepperKind kind,
                                       SpectralTransform transform,
                                       std::vector<StageTables> tables,
                                       std::vector<std::size_t> component_table,
                                       ExplicitTerm explicit_term)
    : kind_(kind),
      transform_(std::move(transform)),
      tables_(std::move(tables)),
      component_table_(std::move(component_table)),
      explicit_term_(std::move(explicit_term)) {
  if (tables_.empty() || component_table_.empty()) {
    throw std::invalid_argument("stepper needs at least one component");
  }
  const std::size_t n = transform_.shape().size();
  for (const auto& t : tables_) {
    if (t.scheme != kind_) {
      throw std::invalid_argument("stage tables built for another scheme");
    }
    if (t.size() != n) {
      throw std::invalid_argument("stage tables do not match the grid");
    }
    if (t.k != tables_.front().k) {
      throw std::invalid_argument("stage tables use different step sizes");
    }
  }
  for (auto idx : component_table_) {
    if (idx >= tables_.size()) {
      throw std::invalid_argument("component refers to a missing table");
    }
  }
  if (!explicit_term_) throw std::invalid_argument("explicit term is empty");

  if (kind_ == StepperKind::KrogstadP22) {
    for (const auto& t : tables_) {
      std::vector<Complex> wn(n), wab(n), wc(n);
      for (std::size_t i = 0; i < n; ++i) {
        wn[i] = t.p1[i] - 3.0 * t.p2[i] + t.p3[i];
        wab[i] = 2.0 * t.p2[i] - t.p3[i];
        wc[i] = t.p3[i] - t.p2[i];
      }
      w_n_.push_back(std::move(wn));
      w_ab_.push_back(std::move(wab));
      w_c_.push_back(std::move(wc));
    }
  }

  const std::size_t m = component_table_.size();
  for (auto* buffers : {&psi_hat_, &f_n_, &f_a_, &f_b_, &f_c_, &stage_}) {
    buffers->assign(m, ComplexField(transform_.shape()));
  }
}

ExponentialStepper ExponentialStepper::for_system(
    StepperKind kind, double k, const Grid& grid,
    const SystemCoefficients& coeffs) {
  coeffs.validate();
  std::vector<StageTables> tables;
  std::vector<std::size_t> component_table;
  std::map<double, std::size_t> by_alpha;
  for (double a : coeffs.alpha) {
    auto [it, inserted] = by_alpha.try_emplace(a, tables.size());
    if (inserted) tables.push_back(build_tables(kind, k, a, grid.symbol()));
    component_table.push_back(it->second);
  }
  ExplicitTerm term = [coeffs](std::span<const ComplexField> in,
                               std::span<ComplexField> out) {
    nonlinear_rhs(in, coeffs, out);
  };
  return ExponentialStepper(kind, SpectralTransform(grid), std::move(tables),
                            std::move(component_table), std::move(term));
}

void ExponentialStepper::evaluate(std::span<const ComplexField> physical,
                                  std::vector<ComplexField>& spectral_out) {
  explicit_term_(physical, spectral_out);
  for (auto& f : spectral_out) transform_.forward_in_place(f);
}

void ExponentialStepper::step(SystemState& state) {
  if (state.fields.size() != component_table_.size()) {
    throw std::invalid_argument("state component count does not match stepper");
  }
  for (const auto& f : state.fields) {
    if (f.shape() != transform_.shape()) {
      throw std::invalid_argument("state shape does not match stepper grid");
    }
  }
  if (kind_ == StepperKind::KrogstadP22) {
    krogstad_step(state.fields);
  } else {
    ifrk4_step(state.fields);
  }
  ++steps_taken_;
  state.time += step_size();
  check_finite(state.fields);
}

void ExponentialStepper::krogstad_step(std::vector<ComplexField>& psi) {
  const std::size_t m = psi.size();
  const std::size_t n = transform_.shape().size();

  for (std::size_t j = 0; j < m; ++j) {
    psi_hat_[j] = psi[j];
    transform_.forward_in_place(psi_hat_[j]);
  }
  evaluate(psi, f_n_);

  // a_n = T^-1(R~22 Psi + P~1 F_n)
  for (std::size_t j = 0; j < m; ++j) {
    const auto& t = tables_of(j);
    for (std::size_t i = 0; i < n; ++i) {
      stage_[j][i] = t.r22_tilde[i] * psi_hat_[j][i] + t.p1_tilde[i] * f_n_[j][i];
    }
    transform_.inverse_in_place(stage_[j]);
  }
  evaluate(stage_, f_a_);

  // b_n = T^-1(R~22 Psi + P~1 F_n + P~2 (F_a - F_n))
  for (std::size_t j = 0; j < m; ++j) {
    const auto& t = tables_of(j);
    for (std::size_t i = 0; i < n; ++i) {
      stage_[j][i] = t.r22_tilde[i] * psi_hat_[j][i] +
                     t.p1_tilde[i] * f_n_[j][i] +
                     t.p2_tilde[i] * (f_a_[j][i] - f_n_[j][i]);
    }
    transform_.inverse_in_place(stage_[j]);
  }
  evaluate(stage_, f_b_);

  // c_n = T^-1(R22 Psi + P1 F_n + 2 P2 (F_b - F_n))
  for (std::size_t j = 0; j < m; ++j) {
    const auto& t = tables_of(j);
    for (std::size_t i = 0; i < n; ++i) {
      stage_[j][i] = t.r22[i] * psi_hat_[j][i] + t.p1[i] * f_n_[j][i] +
                     2.0 * t.p2[i] * (f_b_[j][i] - f_n_[j][i]);
    }
    transform_.inverse_in_place(stage_[j]);
  }
  evaluate(stage_, f_c_);

  for (std::size_t j = 0; j < m; ++j) {
    const auto& t = tables_of(j);
    const auto& wn = w_n_[component_table_[j]];
    const auto& wab = w_ab_[component_table_[j]];
    const auto& wc = w_c_[component_table_[j]];
    for (std::size_t i = 0; i < n; ++i) {
      psi[j][i] = t.r22[i] * psi_hat_[j][i] + wn[i] * f_n_[j][i] +
                  wab[i] * (f_a_[j][i] + f_b_[j][i]) + wc[i] * f_c_[j][i];
    }
    transform_.inverse_in_place(psi[j]);
  }
}

void ExponentialStepper::ifrk4_step(std::vector<ComplexField>& psi) {
  const std::size_t m = psi.size();
  const std::size_t n = transform_.shape().size();
  const double k = step_size();
  const double half_k = 0.5 * k;

  for (std::size_t j = 0; j < m; ++j) {
    psi_hat_[j] = psi[j];
    transform_.forward_in_place(psi_hat_[j]);
  }
  evaluate(psi, f_n_);

  // a_n = T^-1(R~13 (Psi + k/2 F_n))
  for (std::size_t j = 0; j < m; ++j) {
    const auto& t = tables_of(j);
    for (std::size_t i = 0; i < n; ++i) {
      stage_[j][i] = t.r13_tilde[i] * (psi_hat_[j][i] + half_k * f_n_[j][i]);
    }
    transform_.inverse_in_place(stage_[j]);
  }
  evaluate(stage_, f_a_);

  // b_n = T^-1(R~13 Psi + k/2 F_a)
  for (std::size_t j = 0; j < m; ++j) {
    const auto& t = tables_of(j);
    for (std::size_t i = 0; i < n; ++i) {
      stage_[j][i] = t.r13_tilde[i] * psi_hat_[j][i] + half_k * f_a_[j][i];
    }
    transform_.inverse_in_place(stage_[j]);
  }
  evaluate(stage_, f_b_);

  // c_n = T^-1(R13 Psi + k R~13 F_b)
  for (std::size_t j = 0; j < m; ++j) {
    const auto& t = tables_of(j);
    for (std::size_t i = 0; i < n; ++i) {
      stage_[j][i] = t.r13[i] * psi_hat_[j][i] + k * t.r13_tilde[i] * f_b_[j][i];
    }
    transform_.inverse_in_place(stage_[j]);
  }
  evaluate(stage_, f_c_);

  const double sixth = k / 6.0;
  const double third = k / 3.0;
  for (std::size_t j = 0; j < m; ++j) {
    const auto& t = tables_of(j);
    for (std::size_t i = 0; i < n; ++i) {
      psi[j][i] = t.r13[i] * psi_hat_[j][i] +
                  sixth * (t.r13[i] * f_n_[j][i] + f_c_[j][i]) +
                  third * t.r13_tilde[i] * (f_a_[j][i] + f_b_[j][i]);
    }
    transform_.inverse_in_place(psi[j]);
  }
}

void ExponentialStepper::check_finite(
    const std::vector<ComplexField>& psi) const {
  for (std::size_t j = 0; j < psi.size(); ++j) {
    for (const auto& v : psi[j]) {
      const double mag = std::abs(v);
      if (!std::isfinite(mag) || mag > threshold_) {
        std::ostringstream msg;
        msg << "divergence at step " << steps_taken_ << " in component "
            << j + 1 << " (|psi| = " << mag << ")";
        throw DivergenceError(steps_taken_, msg.str());
      }
    }
  }
}

std::size_t step_count(double T, double k) {
  if (!(T > 0.0) || !std::isfinite(T)) {
    throw std::invalid_argument("final time T must be positive");
  }
  if (!(k > 0.0) || !std::isfinite(k)) {
    throw std::invalid_argument("time step k must be positive");
  }
  const double ratio = T / k;
  const double steps = std::round(ratio);
  if (steps < 1.0 || std::abs(ratio - steps) > 1e-9 * std::max(1.0, ratio)) {
    throw std::invalid_argument("T must be an integer multiple of k");
  }
  return static_cast<std::size_t>(steps);
}

IntegrationResult integrate(ExponentialStepper& stepper, SystemState state,
                            double T, std::span<const Observer> observers) {
  IntegrationResult result;
  result.steps = step_count(T, stepper.step_size());
  for (const auto& obs : observers) {
    if (obs.every == 0) throw std::invalid_argument("observer cadence is zero");
    if (result.steps % obs.every != 0) {
      result.warnings.push_back(
          "observer cadence " + std::to_string(obs.every) +
          " does not divide " + std::to_string(result.steps) +
          " steps; the final step is recorded as well");
    }
    obs.notify(0, state);
  }
  const double t0 = state.time;
  for (std::size_t s = 1; s <= result.steps; ++s) {
    stepper.step(state);
    // Re-derive time from the step index so it does not accumulate roundoff.
    state.time = t0 + static_cast<double>(s) * stepper.step_size();
    for (const auto& obs : observers) {
      if (s % obs.every == 0 || s == result.steps) obs.notify(s, state);
    }
  }
  result.state = std::move(state);
  return result;
}

}  // namespace cnls
