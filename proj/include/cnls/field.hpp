#pragma once

#include <algorithm>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <limits>
#include <new>
#include <span>
#include <vector>

namespace cnls {

using Complex = std::complex<double>;

namespace detail {
void* aligned_allocate(std::size_t bytes);
void aligned_free(void* ptr) noexcept;
}  // namespace detail

/// Allocator that hands out SIMD-aligned blocks so FFTW plans made on one
/// buffer can be executed on any field.
template <class T>
struct AlignedAllocator {
  using value_type = T;

  AlignedAllocator() = default;
  template <class U>
  AlignedAllocator(const AlignedAllocator<U>&) noexcept {}

  T* allocate(std::size_t n) {
    if (n > std::numeric_limits<std::size_t>::max() / sizeof(T)) {
      throw std::bad_array_new_length();
    }
    return static_cast<T*>(detail::aligned_allocate(n * sizeof(T)));
  }
  void deallocate(T* p, std::size_t) noexcept { detail::aligned_free(p); }

  template <class U>
  bool operator==(const AlignedAllocator<U>&) const noexcept {
    return true;
  }
};

/// Extents of a row-major grid (last index fastest).
class Shape {
 public:
  Shape() = default;
  Shape(std::initializer_list<std::size_t> extents) : extents_(extents) {}
  explicit Shape(std::vector<std::size_t> extents)
      : extents_(std::move(extents)) {}

  std::size_t rank() const { return extents_.size(); }
  std::size_t extent(std::size_t axis) const { return extents_.at(axis); }
  std::span<const std::size_t> extents() const { return extents_; }

  std::size_t size() const {
    std::size_t n = extents_.empty() ? 0 : 1;
    for (auto e : extents_) n *= e;
    return n;
  }

  bool operator==(const Shape&) const = default;

 private:
  std::vector<std::size_t> extents_;
};

/// Complex amplitudes of one component on a grid. Also used as the storage
/// for spectral coefficients.
class ComplexField {
 public:
  using Storage = std::vector<Complex, AlignedAllocator<Complex>>;

  ComplexField() = default;
  explicit ComplexField(Shape shape, Complex fill = {})
      : shape_(std::move(shape)), values_(shape_.size(), fill) {}

  const Shape& shape() const { return shape_; }
  std::size_t size() const { return values_.size(); }

  Complex* data() { return values_.data(); }
  const Complex* data() const { return values_.data(); }
  std::span<Complex> values() { return values_; }
  std::span<const Complex> values() const { return values_; }

  Complex& operator[](std::size_t i) { return values_[i]; }
  const Complex& operator[](std::size_t i) const { return values_[i]; }

  auto begin() { return values_.begin(); }
  auto end() { return values_.end(); }
  auto begin() const { return values_.begin(); }
  auto end() const { return values_.end(); }

  void fill(Complex value) { std::fill(values_.begin(), values_.end(), value); }

 private:
  Shape shape_;
  Storage values_;
};

/// Coefficients of a field in the eigenbasis of the active boundary
/// condition. Kept distinct from ComplexField so physical and spectral data
/// cannot be mixed up at API boundaries.
struct SpectralCoeffs {
  ComplexField values;
};

}  // namespace cnls
