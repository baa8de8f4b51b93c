#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <random>
#include <stdexcept>

#include "cnls/grid.hpp"
#include "cnls/model.hpp"
#include "cnls/transforms.hpp"

namespace {

using cnls::BoundaryCondition;
using cnls::Complex;
using cnls::ComplexField;

cnls::SystemState point_state(std::initializer_list<Complex> values) {
  cnls::SystemState s;
  for (auto v : values) s.fields.emplace_back(cnls::Shape{1}, v);
  return s;
}

TEST(NonlinearRhs, ZeroStateGivesZero) {
  cnls::SystemState s;
  s.fields.assign(3, ComplexField(cnls::Shape{5}));
  const auto g = cnls::nonlinear_rhs(s, cnls::SystemCoefficients::uniform(3, 1, 1, 0.5));
  for (const auto& f : g)
    for (auto v : f) EXPECT_EQ(v, Complex(0.0));
}

TEST(NonlinearRhs, HandEvaluatedPair) {
  cnls::SystemCoefficients c{{1, 1}, {{1, 2.0 / 3}, {2.0 / 3, 1}}};
  const auto g = cnls::nonlinear_rhs(point_state({1.0, Complex(0, 2)}), c);
  EXPECT_NEAR(std::abs(g[0][0] - Complex(0, 11.0 / 3)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(g[1][0] - Complex(-28.0 / 3, 0)), 0.0, 1e-14);
}

TEST(NonlinearRhs, SingleComponentCubic) {
  cnls::SystemCoefficients c{{0}, {{2}}};
  const Complex w{0.7, -1.3};
  const auto g = cnls::nonlinear_rhs(point_state({w}), c);
  const Complex want = Complex(0, 2) * std::norm(w) * w;
  EXPECT_NEAR(std::abs(g[0][0] - want), 0.0, 1e-14);
}

TEST(NonlinearRhs, ComponentMismatchThrows) {
  EXPECT_THROW(cnls::nonlinear_rhs(point_state({1.0}), cnls::SystemCoefficients::uniform(2, 1, 1, 1)),
               std::invalid_argument);
}

class NonlinearProperties : public ::testing::Test {
 protected:
  void SetUp() override {
    std::mt19937_64 rng(5);
    std::normal_distribution<double> nd;
    coeffs = {{1, 0.5, 2}, {{1, 0.3, -0.7}, {0.3, 2, 1.1}, {-0.7, 1.1, -1}}};
    for (int j = 0; j < 3; ++j) {
      ComplexField f(cnls::Shape{64});
      for (auto& v : f) v = {nd(rng), nd(rng)};
      state.fields.push_back(f);
    }
  }
  cnls::SystemCoefficients coeffs;
  cnls::SystemState state;
};

TEST_F(NonlinearProperties, GaugeEquivariant) {
  const Complex phase = std::polar(1.0, 0.917);
  auto rotated = state;
  for (auto& f : rotated.fields)
    for (auto& v : f) v *= phase;
  const auto g = cnls::nonlinear_rhs(state, coeffs);
  const auto gr = cnls::nonlinear_rhs(rotated, coeffs);
  for (int j = 0; j < 3; ++j)
    for (std::size_t i = 0; i < 64; ++i)
      EXPECT_LE(std::abs(gr[j][i] - phase * g[j][i]), 1e-13 * (1 + std::abs(g[j][i])));
}

TEST_F(NonlinearProperties, ConjPsiTimesGIsImaginary) {
  const auto g = cnls::nonlinear_rhs(state, coeffs);
  for (int j = 0; j < 3; ++j)
    for (std::size_t i = 0; i < 64; ++i) {
      const Complex p = std::conj(state.fields[j][i]) * g[j][i];
      EXPECT_LE(std::abs(p.real()), 1e-14 * std::max(1.0, std::abs(p)));
    }
}

TEST(InitialConditions, SingleSolitonPeak) {
  const auto grid = cnls::Grid::cube(BoundaryCondition::Periodic, 1, -20.0, 80.0, 100);
  const auto s = cnls::make_initial(cnls::SingleSoliton{}, grid);
  ASSERT_EQ(s.components(), 2u);
  const std::size_t i0 = 20;  // x = 0
  ASSERT_DOUBLE_EQ(grid.axis(0).points[i0], 0.0);
  EXPECT_NEAR(std::abs(s.fields[0][i0] - std::sqrt(6.0 / 5.0)), 0.0, 1e-15);
  EXPECT_EQ(s.fields[0][i0], s.fields[1][i0]);
}

TEST(InitialConditions, TwoSolitonPeakAtMinus25) {
  const auto grid = cnls::Grid::cube(BoundaryCondition::Periodic, 1, -40.0, 40.0, 80);
  const auto s = cnls::make_initial(cnls::TwoSoliton{}, grid);
  ASSERT_DOUBLE_EQ(grid.axis(0).points[15], -25.0);
  EXPECT_NEAR(std::abs(s.fields[0][15]), 1.697056, 1e-6);
  EXPECT_NEAR(std::abs(s.fields[0][15]), std::sqrt(2.0) * 1.2, 1e-15);
}

TEST(InitialConditions, BlowUpPairAtMinus10) {
  const auto grid = cnls::Grid::cube(BoundaryCondition::Periodic, 1, -40.0, 40.0, 80);
  const auto s = cnls::make_initial(cnls::BlowUpPair{}, grid);
  ASSERT_EQ(s.components(), 1u);
  ASSERT_DOUBLE_EQ(grid.axis(0).points[30], -10.0);
  const Complex want = 1.0 + std::polar(1.0 / std::cosh(20.0), 40.0);
  EXPECT_NEAR(std::abs(s.fields[0][30] - want), 0.0, 1e-15);
}

TEST(InitialConditions, FourWaveShapesAndCounts) {
  const auto g2 = cnls::Grid::cube(BoundaryCondition::Dirichlet, 2, -10.0, 10.0, 16);
  const auto s2 = cnls::make_initial(cnls::FourWave2D{}, g2);
  EXPECT_EQ(s2.components(), 4u);
  EXPECT_EQ(s2.fields[0].shape(), g2.shape());
  const auto g3 = cnls::Grid::cube(BoundaryCondition::Dirichlet, 3, -10.0, 10.0, 8);
  EXPECT_EQ(cnls::make_initial(cnls::FourWave3D{}, g3).components(), 4u);
  EXPECT_EQ(cnls::component_count(cnls::FourSoliton{}), 4u);
}

TEST(InitialConditions, Errors) {
  const auto g1 = cnls::Grid::cube(BoundaryCondition::Periodic, 1, -10.0, 10.0, 16);
  EXPECT_THROW(cnls::make_initial(cnls::FourWave2D{}, g1), std::invalid_argument);
  const auto g2 = cnls::Grid::cube(BoundaryCondition::Periodic, 2, -10.0, 10.0, 16);
  EXPECT_THROW(cnls::make_initial(cnls::SingleSoliton{}, g2), std::invalid_argument);
  EXPECT_THROW(cnls::make_initial(cnls::SingleSoliton{-1.0, 1.0, 0.5, 1.0}, g1), std::invalid_argument);
  EXPECT_THROW(cnls::make_initial(cnls::SingleSoliton{2.0, 1.0, -1.5, 1.0}, g1), std::invalid_argument);
}

TEST(ExactSolution, MatchesInitialAtZeroAndTravels) {
  const cnls::SingleSoliton p;
  const auto grid = cnls::Grid::cube(BoundaryCondition::Periodic, 1, -20.0, 80.0, 256);
  const auto s = cnls::make_initial(p, grid);
  const auto e0 = cnls::exact_single_soliton(grid, 0.0, p);
  for (std::size_t i = 0; i < e0.size(); ++i) EXPECT_LE(std::abs(e0[i] - s.fields[0][i]), 1e-15);
  for (double t : {0.5, 3.0}) {
    for (double x : {-3.0, 0.2, 7.5}) {
      EXPECT_NEAR(std::abs(cnls::exact_single_soliton(x, t, p)),
                  std::abs(cnls::exact_single_soliton(x - p.v * t, 0.0, p)), 1e-15);
    }
  }
  EXPECT_NEAR(std::abs(cnls::exact_single_soliton(2.0, 2.0, p)), 1.095445, 1e-6);
}

// The exact soliton satisfies the semidiscrete system: time derivative by a
// central difference, Laplacian spectrally.
TEST(ExactSolution, SemidiscreteResidual) {
  const cnls::SingleSoliton p;
  const auto coeffs = cnls::single_soliton_coefficients(p);
  const auto grid = cnls::Grid::cube(BoundaryCondition::Periodic, 1, -20.0, 80.0, 1024);
  cnls::SpectralTransform t(grid);
  const double delta = 1e-5;
  for (double time : {0.0, 1.0}) {
    const auto psi = cnls::exact_single_soliton(grid, time, p);
    const auto plus = cnls::exact_single_soliton(grid, time + delta, p);
    const auto minus = cnls::exact_single_soliton(grid, time - delta, p);
    const auto lap = cnls::apply_laplacian(psi, grid.symbol(), t);
    const double nl = coeffs.sigma[0][0] + coeffs.sigma[0][1];  // components are equal
    double worst = 0;
    for (std::size_t i = 0; i < psi.size(); ++i) {
      const Complex dt = (plus[i] - minus[i]) / (2 * delta);
      const Complex r = Complex(0, 1) * dt - coeffs.alpha[0] * lap[i] + nl * std::norm(psi[i]) * psi[i];
      worst = std::max(worst, std::abs(r));
    }
    EXPECT_LE(worst, 1e-6) << "t=" << time;
  }
}

TEST(Coefficients, ValidateAndUniform) {
  const auto u = cnls::SystemCoefficients::uniform(3, 0.5, 1.0, 2.0);
  EXPECT_EQ(u.components(), 3u);
  EXPECT_EQ(u.sigma[1][1], 1.0);
  EXPECT_EQ(u.sigma[0][2], 2.0);
  EXPECT_NO_THROW(u.validate());
  cnls::SystemCoefficients bad{{1, 1}, {{1, 1}}};
  EXPECT_THROW(bad.validate(), std::invalid_argument);
  cnls::SystemCoefficients nan{{1}, {{NAN}}};
  EXPECT_THROW(nan.validate(), std::invalid_argument);
}

}  // namespace
