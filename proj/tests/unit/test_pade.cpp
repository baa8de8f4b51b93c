#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "cnls/grid.hpp"
#include "cnls/pade.hpp"

namespace {

namespace pade = cnls::pade;
using cnls::Complex;
using LD = long double;
using CLD = std::complex<long double>;

// Least-squares slope of log(err) against log(|z|).
template <class F>
double loglog_slope(F err, double lo, double hi, int samples) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (int i = 0; i < samples; ++i) {
    const double s = lo * std::pow(hi / lo, double(i) / (samples - 1));
    const double x = std::log(s), y = std::log(err(s));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (samples * sxy - sx * sy) / (samples * sxx - sx * sx);
}

TEST(Pade, LimitsAtZero) {
  const Complex z0{0.0, 0.0};
  const double k = 0.37;
  EXPECT_EQ(pade::r22(z0), Complex(1.0));
  EXPECT_EQ(pade::r22_tilde(z0), Complex(1.0));
  EXPECT_EQ(pade::r13(z0), Complex(1.0));
  EXPECT_EQ(pade::r13_tilde(z0), Complex(1.0));
  // k phi_1(0), k phi_2(0), 4k phi_3(0), (k/2) phi_1(0), and the half-step
  // phi_2 weight 2k * 12 / 48.
  EXPECT_NEAR(std::abs(pade::p1(k, z0) - k), 0.0, 1e-16);
  EXPECT_NEAR(std::abs(pade::p2(k, z0) - k / 2), 0.0, 1e-16);
  EXPECT_NEAR(std::abs(pade::p3(k, z0) - 2 * k / 3), 0.0, 1e-16);
  EXPECT_NEAR(std::abs(pade::p1_tilde(k, z0) - k / 2), 0.0, 1e-16);
  EXPECT_NEAR(std::abs(pade::p2_tilde(k, z0) - k / 2), 0.0, 1e-16);
  // Final-update weights collapse to the RK4 ones.
  const auto p1 = pade::p1(k, z0), p2 = pade::p2(k, z0), p3 = pade::p3(k, z0);
  EXPECT_NEAR(std::abs(p1 - 3.0 * p2 + p3 - k / 6), 0.0, 1e-16);
  EXPECT_NEAR(std::abs(2.0 * p2 - p3 - k / 3), 0.0, 1e-16);
}

TEST(Pade, R22UnimodularOnImaginaryAxis) {
  double worst = 0;
  for (int i = -4000; i <= 4000; ++i) {
    const double y = std::sinh(i * 1e-3) * 50;  // dense near 0, out to ~1.4e3
    worst = std::max(worst, std::abs(std::abs(pade::r22(Complex(0, y))) - 1.0));
    worst = std::max(worst, std::abs(std::abs(pade::r22_tilde(Complex(0, y))) - 1.0));
  }
  EXPECT_LE(worst, 1e-14);
}

TEST(Pade, R22ConjugatePairsAreExact) {
  for (double y : {0.1, 3.0, 77.0, 1e4}) {
    EXPECT_EQ(pade::r22(Complex(0, -y)), std::conj(pade::r22(Complex(0, y))));
  }
}

TEST(Pade, R22AAcceptable) {
  for (double re = 1e-3; re < 50; re *= 1.7)
    for (double im = -40; im <= 40; im += 0.5) EXPECT_LT(std::abs(pade::r22(Complex(re, im))), 1.0);
}

TEST(Pade, NoPolesOnImaginaryAxis) {
  using pade::detail::polynomial;
  double worst = INFINITY;
  for (double y = -200; y <= 200; y += 1e-2) {
    const Complex z{0, y};
    for (double m : {std::abs(polynomial(pade::detail::den22<double>, z)),
                     std::abs(polynomial(pade::detail::den22_half<double>, z)),
                     std::abs(polynomial(pade::detail::den13<double>, z)),
                     std::abs(polynomial(pade::detail::den13_half<double>, z))})
      worst = std::min(worst, m);
  }
  EXPECT_GT(worst, 0.5);
}

TEST(Pade, ApproximationOrder) {
  // long double keeps the z^5 error above roundoff down to |z| = 1e-3.
  auto r22_err = [](double s) {
    const CLD z{0, LD(s)};
    return double(std::abs(pade::r22<LD>(z) - std::exp(-z)));
  };
  auto r13_err = [](double s) {
    const CLD z{0, LD(s)};
    return double(std::abs(pade::r13<LD>(z) - std::exp(-z)));
  };
  EXPECT_GE(loglog_slope(r22_err, 1e-3, 1e-1, 21), 4.8);
  EXPECT_GE(loglog_slope(r13_err, 1e-3, 1e-1, 21), 4.8);
}

// phi_2(-z) = (e^{-z} - 1 + z) / z^2, phi_3(-z) = (1 - z + z^2/2 - e^{-z}) / z^3
CLD phi2m(CLD z) { return (std::exp(-z) - LD(1) + z) / (z * z); }
CLD phi3m(CLD z) { return (LD(1) - z + z * z / LD(2) - std::exp(-z)) / (z * z * z); }

TEST(Pade, StageWeightsTrackPhiFunctions) {
  auto p2_err = [](double s) {
    const CLD z{0, LD(s)};
    return double(std::abs(pade::p2<LD>(1, z) - phi2m(z)));
  };
  auto p3_err = [](double s) {
    const CLD z{0, LD(s)};
    return double(std::abs(pade::p3<LD>(1, z) - LD(4) * phi3m(z)));
  };
  // k(6 - z) / d, the alternative sign, only agrees at z = 0.
  auto flipped_err = [](double s) {
    const CLD z{0, LD(s)};
    const CLD d = LD(12) + LD(6) * z + z * z;
    return double(std::abs((LD(6) - z) / d - phi2m(z)));
  };
  // Series agreement through z^2 for p2 and through z for p3.
  EXPECT_GE(loglog_slope(p2_err, 1e-3, 1e-1, 11), 2.9);
  EXPECT_GE(loglog_slope(p3_err, 1e-3, 1e-1, 11), 1.9);
  EXPECT_LT(loglog_slope(flipped_err, 1e-3, 1e-1, 11), 1.1);
}

TEST(Pade, HalfStepVariantIsHalvedArgument) {
  for (Complex z : {Complex(0, 0.3), Complex(0, 12.0), Complex(1.5, -2.0)}) {
    EXPECT_LE(std::abs(pade::r13_tilde(z) - pade::r13(z / 2.0)), 1e-15);
    EXPECT_LE(std::abs(pade::r22_tilde(z) - pade::r22(z / 2.0)), 1e-15);
  }
}

TEST(Pade, ZeroDenominatorRaises) {
  const std::array<double, 1> num{1};
  const std::array<double, 2> den{0, 0};
  EXPECT_THROW(pade::detail::rational(num, den, Complex(0.5, 0.5)), cnls::PoleError);
}

TEST(StageTables, SingleEntryKnownValue) {
  cnls::LaplacianSymbol sym{cnls::Shape{1}, {1.0}};
  const auto t = cnls::build_tables(cnls::StepperKind::KrogstadP22, 1.0, 1.0, sym);
  const Complex want = Complex(11, -6) / Complex(11, 6);
  EXPECT_LE(std::abs(t.r22[0] - want), 1e-15);
  EXPECT_TRUE(t.r13.empty());
}

TEST(StageTables, ZeroSymbolGivesLimits) {
  cnls::LaplacianSymbol sym{cnls::Shape{3}, {0.0, 0.0, 0.0}};
  const double k = 0.1;
  const auto kr = cnls::build_tables(cnls::StepperKind::KrogstadP22, k, 1.0, sym);
  const auto ifr = cnls::build_tables(cnls::StepperKind::IFRK4P13, k, 1.0, sym);
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_EQ(kr.r22[i], Complex(1.0));
    EXPECT_EQ(kr.r22_tilde[i], Complex(1.0));
    EXPECT_NEAR(kr.p1[i].real(), k, 1e-16);
    EXPECT_NEAR(kr.p2[i].real(), k / 2, 1e-16);
    EXPECT_NEAR(kr.p3[i].real(), 2 * k / 3, 1e-16);
    EXPECT_EQ(ifr.r13[i], Complex(1.0));
    EXPECT_EQ(ifr.r13_tilde[i], Complex(1.0));
  }
}

TEST(StageTables, DoubledStepDoublesArgument) {
  const auto grid = cnls::Grid::cube(cnls::BoundaryCondition::Dirichlet, 1, 0.0, 3.0, 16);
  const auto a = cnls::build_tables(cnls::StepperKind::IFRK4P13, 0.05, 0.7, grid.symbol());
  const auto b = cnls::build_tables(cnls::StepperKind::IFRK4P13, 0.10, 0.7, grid.symbol());
  for (std::size_t i = 0; i < 16; ++i) {
    const Complex z{0, 0.10 * 0.7 * grid.symbol().values[i]};
    EXPECT_LE(std::abs(b.r13[i] - pade::r13(z)), 1e-15);
    if (i > 0) EXPECT_NE(a.r13[i], b.r13[i]);
  }
}

TEST(StageTables, RejectsBadStep) {
  cnls::LaplacianSymbol sym{cnls::Shape{1}, {1.0}};
  EXPECT_THROW(cnls::build_tables(cnls::StepperKind::KrogstadP22, 0.0, 1.0, sym),
               std::invalid_argument);
  EXPECT_THROW(cnls::build_tables(cnls::StepperKind::IFRK4P13, NAN, 1.0, sym),
               std::invalid_argument);
}

TEST(StepperKindNames, ParseAndPrint) {
  EXPECT_EQ(cnls::parse_stepper_kind("krogstad-p22"), cnls::StepperKind::KrogstadP22);
  EXPECT_EQ(cnls::parse_stepper_kind("ifrk4_p13"), cnls::StepperKind::IFRK4P13);
  EXPECT_THROW(cnls::parse_stepper_kind("etdrk4"), std::invalid_argument);
}

}  // namespace
