#pragma once

#include <memory>

#include "cnls/field.hpp"
#include "cnls/grid.hpp"

namespace cnls {

/// Separable spectral transform matched to a boundary condition:
///   Periodic  -> unnormalized complex DFT per axis
///   Dirichlet -> DST-I per axis
///   Neumann   -> DCT-II forward, DCT-III inverse per axis
/// Real and imaginary parts go through the real transforms independently.
/// The forward direction is unnormalized; the inverse divides by
/// `inverse_scale()`, so inverse(forward(f)) == f.
///
/// Plans are built once at construction and executed on caller buffers;
/// concurrent calls on one instance are safe.
class SpectralTransform {
 public:
  SpectralTransform(BoundaryCondition bc, Shape shape);
  explicit SpectralTransform(const Grid& grid);
  ~SpectralTransform();

  SpectralTransform(SpectralTransform&&) noexcept;
  SpectralTransform& operator=(SpectralTransform&&) noexcept;
  SpectralTransform(const SpectralTransform&) = delete;
  SpectralTransform& operator=(const SpectralTransform&) = delete;

  BoundaryCondition bc() const { return bc_; }
  const Shape& shape() const { return shape_; }
  double inverse_scale() const { return inverse_scale_; }

  void forward_in_place(ComplexField& field) const;
  void inverse_in_place(ComplexField& field) const;

  SpectralCoeffs forward(const ComplexField& field) const;
  ComplexField inverse(const SpectralCoeffs& coeffs) const;

 private:
  void check_shape(const ComplexField& field) const;

  struct Plans;
  BoundaryCondition bc_;
  Shape shape_;
  double inverse_scale_ = 1.0;
  std::unique_ptr<Plans> plans_;
};

/// Applies -Laplacian spectrally: inverse(symbol .* forward(field)).
ComplexField apply_laplacian(const ComplexField& field,
                             const LaplacianSymbol& symbol,
                             const SpectralTransform& transform);

/// Convenience overloads that build a transform for a single call.
SpectralCoeffs forward(const ComplexField& field, BoundaryCondition bc);
ComplexField inverse(const SpectralCoeffs& coeffs, BoundaryCondition bc);

}  // namespace cnls
