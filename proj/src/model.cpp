#include "cnls/model.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace cnls {

namespace {

double sech(double x) { return 1.0 / std::cosh(x); }

void require_dims(const Grid& grid, std::size_t dims, const char* preset) {
  if (grid.dims() != dims) {
    throw std::invalid_argument(std::string(preset) + " requires a " +
                                std::to_string(dims) + "D grid");
  }
}

void check_single_soliton(const SingleSoliton& p) {
  if (!(p.mu * p.alpha > 0.0)) {
    throw std::invalid_argument("single soliton requires mu * alpha > 0");
  }
  if (!(1.0 + p.e > 0.0)) {
    throw std::invalid_argument("single soliton requires 1 + e > 0");
  }
}

Complex sech_pulse(const SechPulse& p, double x) {
  return std::sqrt(2.0) * p.r * sech(p.r * x + p.shift) *
         std::polar(1.0, p.v * x);
}

template <std::size_t M>
SystemState sample_pulses(const std::array<SechPulse, M>& pulses,
                          const Grid& grid) {
  SystemState state;
  for (const auto& pulse : pulses) {
    if (!(pulse.r > 0.0)) {
      throw std::invalid_argument("sech pulse requires r > 0");
    }
    ComplexField f(grid.shape());
    for (std::size_t i = 0; i < f.size(); ++i) {
      f[i] = sech_pulse(pulse, grid.coordinates(i)[0]);
    }
    state.fields.push_back(std::move(f));
  }
  return state;
}

template <std::size_t D>
SystemState sample_four_waves(double c,
                              const std::array<std::array<int, D>, 4>& signs,
                              const Grid& grid) {
  const double amplitude = 2.0 / std::sqrt(std::numbers::pi);
  SystemState state;
  for (const auto& pattern : signs) {
    ComplexField f(grid.shape());
    for (std::size_t i = 0; i < f.size(); ++i) {
      const auto x = grid.coordinates(i);
      double offset = 0.0;
      double radius2 = 0.0;
      for (std::size_t d = 0; d < D; ++d) {
        const double s = x[d] - pattern[d] * c;
        offset += s * s;
        radius2 += x[d] * x[d];
      }
      f[i] = amplitude * std::exp(-offset) * std::polar(1.0, -radius2);
    }
    state.fields.push_back(std::move(f));
  }
  return state;
}

}  // namespace

void SystemCoefficients::validate() const {
  const std::size_t m = alpha.size();
  if (m == 0) throw std::invalid_argument("system needs at least one component");
  if (sigma.size() != m) {
    throw std::invalid_argument("sigma must have one row per component");
  }
  for (std::size_t j = 0; j < m; ++j) {
    if (!std::isfinite(alpha[j])) {
      throw std::invalid_argument("alpha entries must be finite");
    }
    if (sigma[j].size() != m) {
      throw std::invalid_argument("sigma must be square (M x M)");
    }
    for (double s : sigma[j]) {
      if (!std::isfinite(s)) {
        throw std::invalid_argument("sigma entries must be finite");
      }
    }
  }
}

SystemCoefficients SystemCoefficients::uniform(std::size_t m, double a,
                                               double self, double cross) {
  SystemCoefficients c;
  c.alpha.assign(m, a);
  c.sigma.assign(m, std::vector<double>(m, cross));
  for (std::size_t j = 0; j < m; ++j) c.sigma[j][j] = self;
  return c;
}

void nonlinear_rhs(std::span<const ComplexField> state,
                   const SystemCoefficients& coeffs,
                   std::span<ComplexField> out) {
  const std::size_t m = coeffs.components();
  if (state.size() != m || out.size() != m) {
    throw std::invalid_argument("component count does not match coefficients");
  }
  const std::size_t n = state.front().size();
  for (std::size_t j = 0; j < m; ++j) {
    if (state[j].size() != n || out[j].size() != n) {
      throw std::invalid_argument("components must share one grid");
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      double potential = 0.0;
      for (std::size_t k = 0; k < m; ++k) {
        potential += coeffs.sigma[j][k] * std::norm(state[k][i]);
      }
      const Complex psi = state[j][i];
      out[j][i] = Complex(-potential * psi.imag(), potential * psi.real());
    }
  }
}

std::vector<ComplexField> nonlinear_rhs(const SystemState& state,
                                        const SystemCoefficients& coeffs) {
  std::vector<ComplexField> out;
  for (const auto& f : state.fields) out.emplace_back(f.shape());
  nonlinear_rhs(state.fields, coeffs, out);
  return out;
}

std::size_t component_count(const InitialCondition& ic) {
  struct Visitor {
    std::size_t operator()(const SingleSoliton&) const { return 2; }
    std::size_t operator()(const TwoSoliton&) const { return 2; }
    std::size_t operator()(const FourSoliton&) const { return 4; }
    std::size_t operator()(const FourWave2D&) const { return 4; }
    std::size_t operator()(const FourWave3D&) const { return 4; }
    std::size_t operator()(const BlowUpPair&) const { return 1; }
    std::size_t operator()(const CustomFields& c) const {
      return c.fields.size();
    }
  };
  return std::visit(Visitor{}, ic);
}

SystemState make_initial(const InitialCondition& ic, const Grid& grid) {
  struct Visitor {
    const Grid& grid;

    SystemState operator()(const SingleSoliton& p) const {
      require_dims(grid, 1, "single soliton");
      check_single_soliton(p);
      ComplexField f = exact_single_soliton(grid, 0.0, p);
      SystemState state;
      state.fields = {f, f};
      return state;
    }
    SystemState operator()(const TwoSoliton& p) const {
      require_dims(grid, 1, "two-soliton");
      return sample_pulses(p.pulses, grid);
    }
    SystemState operator()(const FourSoliton& p) const {
      require_dims(grid, 1, "four-soliton");
      return sample_pulses(p.pulses, grid);
    }
    SystemState operator()(const FourWave2D& p) const {
      require_dims(grid, 2, "four-wave 2D");
      static constexpr std::array<std::array<int, 2>, 4> signs{
          {{1, 1}, {-1, -1}, {1, -1}, {-1, 1}}};
      return sample_four_waves<2>(p.c, signs, grid);
    }
    SystemState operator()(const FourWave3D& p) const {
      require_dims(grid, 3, "four-wave 3D");
      static constexpr std::array<std::array<int, 3>, 4> signs{
          {{1, 1, 1}, {-1, -1, -1}, {1, -1, 1}, {-1, 1, -1}}};
      return sample_four_waves<3>(p.c, signs, grid);
    }
    SystemState operator()(const BlowUpPair&) const {
      require_dims(grid, 1, "blow-up pair");
      ComplexField f(grid.shape());
      for (std::size_t i = 0; i < f.size(); ++i) {
        const double x = grid.coordinates(i)[0];
        f[i] = std::polar(sech(x + 10.0), 2.0 * (x + 10.0)) +
               std::polar(sech(x - 10.0), -2.0 * (x - 10.0));
      }
      SystemState state;
      state.fields.push_back(std::move(f));
      return state;
    }
    SystemState operator()(const CustomFields& c) const {
      if (c.fields.empty()) {
        throw std::invalid_argument("custom initial condition has no fields");
      }
      for (const auto& f : c.fields) {
        if (f.shape() != grid.shape()) {
          throw std::invalid_argument("custom field shape does not match grid");
        }
      }
      SystemState state;
      state.fields = c.fields;
      return state;
    }
  };
  return std::visit(Visitor{grid}, ic);
}

Complex exact_single_soliton(double x, double t, const SingleSoliton& p) {
  check_single_soliton(p);
  const double width = std::sqrt(p.mu * p.alpha);
  const double amplitude = std::sqrt(p.mu * p.alpha / (1.0 + p.e));
  const double phase = p.v * x - (0.5 * p.v * p.v - p.alpha) * t;
  return amplitude * sech(width * (x - p.v * t)) * std::polar(1.0, phase);
}

ComplexField exact_single_soliton(const Grid& grid, double t,
                                  const SingleSoliton& p) {
  require_dims(grid, 1, "single soliton");
  ComplexField f(grid.shape());
  const auto& x = grid.axis(0).points;
  for (std::size_t i = 0; i < f.size(); ++i) {
    f[i] = exact_single_soliton(x[i], t, p);
  }
  return f;
}

SystemCoefficients single_soliton_coefficients(const SingleSoliton& p) {
  return SystemCoefficients::uniform(2, 1.0 / p.mu, 1.0, p.e);
}

}  // namespace cnls
