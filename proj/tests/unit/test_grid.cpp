#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "cnls/grid.hpp"

namespace {

using cnls::BoundaryCondition;
using std::numbers::pi;

void expect_all_near(const std::vector<double>& got, const std::vector<double>& want,
                     double tol) {
  ASSERT_EQ(got.size(), want.size());
  for (std::size_t i = 0; i < got.size(); ++i) EXPECT_NEAR(got[i], want[i], tol) << i;
}

TEST(Grid, DirichletThreePoints) {
  const auto ax = cnls::build_axis(BoundaryCondition::Dirichlet, 0.0, 1.0, 3);
  EXPECT_DOUBLE_EQ(ax.h, 0.25);
  expect_all_near(ax.points, {0.25, 0.5, 0.75}, 1e-15);
  expect_all_near(ax.eigenvalues, {pi * pi, 4 * pi * pi, 9 * pi * pi}, 1e-12);
}

TEST(Grid, NeumannTwoPoints) {
  const auto ax = cnls::build_axis(BoundaryCondition::Neumann, 0.0, 1.0, 2);
  expect_all_near(ax.points, {0.25, 0.75}, 1e-15);
  expect_all_near(ax.eigenvalues, {0.0, pi * pi}, 1e-12);
}

TEST(Grid, PeriodicDftOrder) {
  const auto ax = cnls::build_axis(BoundaryCondition::Periodic, 0.0, 1.0, 4);
  expect_all_near(ax.points, {0.0, 0.25, 0.5, 0.75}, 1e-15);
  const double w = 4 * pi * pi;
  expect_all_near(ax.eigenvalues, {0.0, w, 4 * w, w}, 1e-12);
}

TEST(Grid, PeriodicAsymmetricDomainStartsAtA) {
  const auto ax = cnls::build_axis(BoundaryCondition::Periodic, -20.0, 80.0, 1024);
  EXPECT_DOUBLE_EQ(ax.points.front(), -20.0);
  EXPECT_NEAR(ax.points.back(), 80.0 - 100.0 / 1024, 1e-12);
}

TEST(Grid, RejectsBadAxes) {
  EXPECT_THROW(cnls::build_axis(BoundaryCondition::Dirichlet, 0, 1, 1), std::invalid_argument);
  EXPECT_THROW(cnls::build_axis(BoundaryCondition::Periodic, 0, 1, 5), std::invalid_argument);
  EXPECT_THROW(cnls::build_axis(BoundaryCondition::Neumann, 1, 1, 8), std::invalid_argument);
  EXPECT_THROW(cnls::build_axis(BoundaryCondition::Neumann, 0, INFINITY, 8),
               std::invalid_argument);
  EXPECT_NO_THROW(cnls::build_axis(BoundaryCondition::Dirichlet, 0, 1, 5));
}

TEST(Grid, Symbol1DIsAxisEigenvalues) {
  const auto g = cnls::Grid::cube(BoundaryCondition::Neumann, 1, -3.0, 5.0, 16);
  expect_all_near(g.symbol().values, g.axis(0).eigenvalues, 0.0);
}

TEST(Grid, Symbol2DDirichlet) {
  const auto g = cnls::Grid::cube(BoundaryCondition::Dirichlet, 2, 0.0, 1.0, 2);
  const double p2 = pi * pi;
  expect_all_near(g.symbol().values, {2 * p2, 5 * p2, 5 * p2, 8 * p2}, 1e-12);
  EXPECT_EQ(g.shape(), (cnls::Shape{2, 2}));
}

TEST(Grid, Symbol3DNeumannConstantMode) {
  const auto g = cnls::Grid::cube(BoundaryCondition::Neumann, 3, 0.0, 2.0, 4);
  EXPECT_EQ(g.size(), 64u);
  EXPECT_EQ(g.symbol().values[0], 0.0);
  EXPECT_NEAR(g.cell_volume(), 0.125, 1e-15);
}

TEST(Grid, CoordinatesRowMajor) {
  const auto g = cnls::Grid::cube(BoundaryCondition::Periodic, 2, 0.0, 1.0, 4);
  const auto c = g.coordinates(1 * 4 + 3);  // row 1, column 3
  EXPECT_DOUBLE_EQ(c[0], 0.25);
  EXPECT_DOUBLE_EQ(c[1], 0.75);
  EXPECT_DOUBLE_EQ(c[2], 0.0);
}

TEST(Grid, EigenvalueMinima) {
  for (auto bc : {BoundaryCondition::Periodic, BoundaryCondition::Dirichlet,
                  BoundaryCondition::Neumann}) {
    const auto ax = cnls::build_axis(bc, -2.0, 3.0, 32);
    auto sorted = ax.eigenvalues;
    std::sort(sorted.begin(), sorted.end());
    const double expected = bc == BoundaryCondition::Dirichlet ? std::pow(pi / 5.0, 2) : 0.0;
    EXPECT_NEAR(sorted.front(), expected, 1e-14);
    for (double v : sorted) EXPECT_GE(v, 0.0);
  }
}

TEST(Grid, ParseBoundaryCondition) {
  EXPECT_EQ(cnls::parse_boundary_condition("Dirichlet"), BoundaryCondition::Dirichlet);
  EXPECT_EQ(cnls::parse_boundary_condition("NEUMANN"), BoundaryCondition::Neumann);
  EXPECT_THROW(cnls::parse_boundary_condition("robin"), std::invalid_argument);
}

}  // namespace
