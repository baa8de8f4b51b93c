#pragma once

#include <cstddef>
#include <memory>
#include <vector>

#include "cnls/field.hpp"

namespace cnls {

class ExponentialStepper;

/// Linear stability of IFRK4-P13 on du/dt = -c u + lambda u with
/// x = lambda k and y = -c k. The growth factor is obtained by running the
/// production stepper on a one-point grid whose linear argument is kA = -y
/// and whose explicit term is lambda u.
class AmplificationProbe {
 public:
  explicit AmplificationProbe(Complex y);
  ~AmplificationProbe();
  AmplificationProbe(AmplificationProbe&&) noexcept;
  AmplificationProbe& operator=(AmplificationProbe&&) noexcept;

  Complex y() const { return y_; }
  /// r(x, y) = u_1 / u_0 for u_0 = 1.
  Complex operator()(Complex x);

 private:
  Complex y_;
  std::unique_ptr<Complex> x_;  // read by the stepper's explicit term
  std::unique_ptr<ExponentialStepper> stepper_;
};

/// r(x, y) through the executed stepper. Throws PoleError when -y is a pole
/// of R13 or R13~.
Complex amplification(Complex x, Complex y);

/// r = R (1 + x/3) + S^2 [ (x/3)(1 + x/2) + (x/3)(1 + x/2 + x^2/4)
///                         + (x^2/6)(1 + x/2 + x^2/4) ]
/// with R = R13(-y), S = R13~(-y).
Complex amplification_closed_form(Complex x, Complex y);

struct Window {
  double re_min = -6.0;
  double re_max = 1.0;
  double im_min = -5.0;
  double im_max = 5.0;
};

/// |r| sampled on an nx-by-ny lattice covering the window (edges included).
/// Row-major with the imaginary axis as the slow index.
struct StabilityGrid {
  Complex y;
  Window window;
  std::size_t nx = 0;
  std::size_t ny = 0;
  std::vector<double> abs_r;

  Complex x_at(std::size_t ix, std::size_t iy) const;
  double cell_area() const;
  /// Area of lattice cells with |r| <= 1.
  double stable_area() const;
};

/// Throws std::invalid_argument for a non-finite or empty window or fewer
/// than 16 samples per axis.
StabilityGrid stability_region(Complex y, const Window& window, std::size_t nx,
                               std::size_t ny);

/// Left end of the stability interval on the real x axis: the largest
/// x < 0 with |r(x, y)| = 1, located by scanning down from 0 in steps of
/// `scan_step` and bisecting to `tol`.
double real_axis_boundary(Complex y, double x_min = -10.0,
                          double scan_step = 1e-2, double tol = 1e-12);

}  // namespace cnls
