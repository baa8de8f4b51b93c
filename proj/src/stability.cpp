#include "cnls/stability.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "cnls/pade.hpp"
#include "cnls/steppers.hpp"
#include "cnls/transforms.hpp"

namespace cnls {

AmplificationProbe::AmplificationProbe(Complex y)
    : y_(y), x_(std::make_unique<Complex>(0.0)) {
  const Complex z[] = {-y};
  auto tables = build_tables_from_arguments(StepperKind::IFRK4P13, 1.0, z);
  const Complex* x = x_.get();
  ExplicitTerm term = [x](std::span<const ComplexField> in,
                          std::span<ComplexField> out) {
    out[0][0] = *x * in[0][0];
  };
  stepper_ = std::make_unique<ExponentialStepper>(
      StepperKind::IFRK4P13,
      SpectralTransform(BoundaryCondition::Periodic, Shape{1}),
      std::vector<StageTables>{std::move(tables)}, std::vector<std::size_t>{0},
      std::move(term));
  stepper_->set_divergence_threshold(std::numeric_limits<double>::max());
}

AmplificationProbe::~AmplificationProbe() = default;
AmplificationProbe::AmplificationProbe(AmplificationProbe&&) noexcept = default;
AmplificationProbe& AmplificationProbe::operator=(
    AmplificationProbe&&) noexcept = default;

Complex AmplificationProbe::operator()(Complex x) {
  *x_ = x;
  SystemState state;
  state.fields.emplace_back(Shape{1}, Complex(1.0, 0.0));
  stepper_->step(state);
  return state.fields[0][0];
}

Complex amplification(Complex x, Complex y) {
  AmplificationProbe probe(y);
  return probe(x);
}

Complex amplification_closed_form(Complex x, Complex y) {
  const Complex r = pade::r13(-y);
  const Complex s = pade::r13_tilde(-y);
  const Complex a = 1.0 + x / 2.0;
  const Complex b = 1.0 + x / 2.0 + x * x / 4.0;
  return r * (1.0 + x / 3.0) +
         s * s * ((x / 3.0) * a + (x / 3.0) * b + (x * x / 6.0) * b);
}

Complex StabilityGrid::x_at(std::size_t ix, std::size_t iy) const {
  const double dx = (window.re_max - window.re_min) / static_cast<double>(nx - 1);
  const double dy = (window.im_max - window.im_min) / static_cast<double>(ny - 1);
  return {window.re_min + static_cast<double>(ix) * dx,
          window.im_min + static_cast<double>(iy) * dy};
}

double StabilityGrid::cell_area() const {
  return (window.re_max - window.re_min) / static_cast<double>(nx - 1) *
         (window.im_max - window.im_min) / static_cast<double>(ny - 1);
}

double StabilityGrid::stable_area() const {
  std::size_t stable = 0;
  for (double v : abs_r) stable += (v <= 1.0) ? 1 : 0;
  return static_cast<double>(stable) * cell_area();
}

StabilityGrid stability_region(Complex y, const Window& window, std::size_t nx,
                               std::size_t ny) {
  for (double v : {window.re_min, window.re_max, window.im_min, window.im_max}) {
    if (!std::isfinite(v)) throw std::invalid_argument("window must be finite");
  }
  if (!(window.re_max > window.re_min) || !(window.im_max > window.im_min)) {
    throw std::invalid_argument("window must have positive extent");
  }
  if (nx < 16 || ny < 16) {
    throw std::invalid_argument("stability map needs at least 16 samples per axis");
  }
  StabilityGrid grid{y, window, nx, ny, std::vector<double>(nx * ny)};
  AmplificationProbe probe(y);
  for (std::size_t iy = 0; iy < ny; ++iy) {
    for (std::size_t ix = 0; ix < nx; ++ix) {
      grid.abs_r[iy * nx + ix] = std::abs(probe(grid.x_at(ix, iy)));
    }
  }
  return grid;
}

double real_axis_boundary(Complex y, double x_min, double scan_step,
                          double tol) {
  AmplificationProbe probe(y);
  auto excess = [&](double x) { return std::abs(probe(Complex(x, 0.0))) - 1.0; };
  double inside = -scan_step;
  if (excess(inside) > 0.0) {
    throw std::domain_error("no stability interval to the left of x = 0");
  }
  double outside = inside;
  while (excess(outside) <= 0.0) {
    inside = outside;
    outside -= scan_step;
    if (outside < x_min) {
      throw std::domain_error("stability interval extends past x_min");
    }
  }
  while (inside - outside > tol) {
    const double mid = 0.5 * (inside + outside);
    (excess(mid) <= 0.0 ? inside : outside) = mid;
  }
  return 0.5 * (inside + outside);
}

}  // namespace cnls
