#include "cnls/transforms.hpp"

#include <fftw3.h>

#include <mutex>
#include <stdexcept>
#include <string>
#include <vector>

namespace cnls {

namespace detail {

void* aligned_allocate(std::size_t bytes) {
  void* p = fftw_malloc(bytes == 0 ? 1 : bytes);
  if (p == nullptr) throw std::bad_alloc();
  return p;
}

void aligned_free(void* ptr) noexcept { fftw_free(ptr); }

}  // namespace detail

namespace {

// The FFTW planner is not re-entrant.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

}  // namespace

struct SpectralTransform::Plans {
  fftw_plan forward = nullptr;
  fftw_plan inverse = nullptr;

  ~Plans() {
    std::lock_guard lock(planner_mutex());
    if (forward) fftw_destroy_plan(forward);
    if (inverse) fftw_destroy_plan(inverse);
  }
};

SpectralTransform::SpectralTransform(BoundaryCondition bc, Shape shape)
    : bc_(bc), shape_(std::move(shape)), plans_(std::make_unique<Plans>()) {
  if (shape_.rank() < 1 || shape_.rank() > 3 || shape_.size() == 0) {
    throw std::invalid_argument("transform shape must have rank 1 to 3");
  }
  const int rank = static_cast<int>(shape_.rank());
  std::vector<int> n;
  for (auto e : shape_.extents()) n.push_back(static_cast<int>(e));

  for (auto e : shape_.extents()) {
    switch (bc_) {
      case BoundaryCondition::Periodic:
        inverse_scale_ *= static_cast<double>(e);
        break;
      case BoundaryCondition::Dirichlet:
        inverse_scale_ *= 2.0 * static_cast<double>(e + 1);
        break;
      case BoundaryCondition::Neumann:
        inverse_scale_ *= 2.0 * static_cast<double>(e);
        break;
    }
  }

  // Plan on a scratch buffer with the same alignment as every ComplexField;
  // FFTW_ESTIMATE keeps the chosen algorithm (and the output bits) fixed.
  ComplexField scratch(shape_);
  auto* cbuf = reinterpret_cast<fftw_complex*>(scratch.data());
  auto* rbuf = reinterpret_cast<double*>(scratch.data());
  const unsigned flags = FFTW_ESTIMATE;

  std::lock_guard lock(planner_mutex());
  if (bc_ == BoundaryCondition::Periodic) {
    plans_->forward =
        fftw_plan_dft(rank, n.data(), cbuf, cbuf, FFTW_FORWARD, flags);
    plans_->inverse =
        fftw_plan_dft(rank, n.data(), cbuf, cbuf, FFTW_BACKWARD, flags);
  } else {
    std::vector<fftw_r2r_kind> fwd(shape_.rank()), inv(shape_.rank());
    for (std::size_t d = 0; d < shape_.rank(); ++d) {
      if (bc_ == BoundaryCondition::Dirichlet) {
        fwd[d] = FFTW_RODFT00;
        inv[d] = FFTW_RODFT00;
      } else {
        fwd[d] = FFTW_REDFT10;
        inv[d] = FFTW_REDFT01;
      }
    }
    // Two interleaved real transforms (re, im): stride 2, distance 1.
    plans_->forward = fftw_plan_many_r2r(rank, n.data(), 2, rbuf, nullptr, 2,
                                         1, rbuf, nullptr, 2, 1, fwd.data(),
                                         flags);
    plans_->inverse = fftw_plan_many_r2r(rank, n.data(), 2, rbuf, nullptr, 2,
                                         1, rbuf, nullptr, 2, 1, inv.data(),
                                         flags);
  }
  if (plans_->forward == nullptr || plans_->inverse == nullptr) {
    throw std::runtime_error("FFTW failed to create a plan");
  }
}

SpectralTransform::SpectralTransform(const Grid& grid)
    : SpectralTransform(grid.bc(), grid.shape()) {}

SpectralTransform::~SpectralTransform() = default;
SpectralTransform::SpectralTransform(SpectralTransform&&) noexcept = default;
SpectralTransform& SpectralTransform::operator=(SpectralTransform&&) noexcept =
    default;

void SpectralTransform::check_shape(const ComplexField& field) const {
  if (field.shape() != shape_) {
    throw std::invalid_argument("field shape does not match the transform");
  }
}

void SpectralTransform::forward_in_place(ComplexField& field) const {
  check_shape(field);
  if (bc_ == BoundaryCondition::Periodic) {
    auto* p = reinterpret_cast<fftw_complex*>(field.data());
    fftw_execute_dft(plans_->forward, p, p);
  } else {
    auto* p = reinterpret_cast<double*>(field.data());
    fftw_execute_r2r(plans_->forward, p, p);
  }
}

void SpectralTransform::inverse_in_place(ComplexField& field) const {
  check_shape(field);
  if (bc_ == BoundaryCondition::Periodic) {
    auto* p = reinterpret_cast<fftw_complex*>(field.data());
    fftw_execute_dft(plans_->inverse, p, p);
  } else {
    auto* p = reinterpret_cast<double*>(field.data());
    fftw_execute_r2r(plans_->inverse, p, p);
  }
  const double scale = 1.0 / inverse_scale_;
  for (auto& v : field) v *= scale;
}

SpectralCoeffs SpectralTransform::forward(const ComplexField& field) const {
  SpectralCoeffs coeffs{field};
  forward_in_place(coeffs.values);
  return coeffs;
}

ComplexField SpectralTransform::inverse(const SpectralCoeffs& coeffs) const {
  ComplexField field = coeffs.values;
  inverse_in_place(field);
  return field;
}

ComplexField apply_laplacian(const ComplexField& field,
                             const LaplacianSymbol& symbol,
                             const SpectralTransform& transform) {
  if (symbol.shape != field.shape()) {
    throw std::invalid_argument("symbol shape does not match the field");
  }
  ComplexField out = field;
  transform.forward_in_place(out);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] *= symbol.values[i];
  transform.inverse_in_place(out);
  return out;
}

SpectralCoeffs forward(const ComplexField& field, BoundaryCondition bc) {
  return SpectralTransform(bc, field.shape()).forward(field);
}

ComplexField inverse(const SpectralCoeffs& coeffs, BoundaryCondition bc) {
  return SpectralTransform(bc, coeffs.values.shape()).inverse(coeffs);
}

}  // namespace cnls
