#pragma once

#include <array>
#include <complex>
#include <concepts>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "cnls/field.hpp"
#include "cnls/grid.hpp"

namespace cnls {

enum class StepperKind { KrogstadP22, IFRK4P13 };

std::string_view to_string(StepperKind kind);
/// Accepts "krogstad-p22" / "krogstad_p22" and "ifrk4-p13" / "ifrk4_p13".
StepperKind parse_stepper_kind(std::string_view name);

/// Raised when a rational stage operator is evaluated at a root of its
/// denominator.
class PoleError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

namespace pade {

namespace detail {

/// sum_j c[j] z^j. Purely imaginary arguments are split into even and odd
/// real polynomials in Im(z), so p(iy) and p(-iy) come out as exact
/// conjugates.
template <std::floating_point T, std::size_t N>
std::complex<T> polynomial(const std::array<T, N>& c, std::complex<T> z) {
  if (z.real() == T(0)) {
    const T y = z.imag();
    const T y2 = y * y;
    T even = 0;
    T odd = 0;
    // Horner in y^2, alternating signs from i^2 = -1.
    for (std::size_t j = N; j-- > 0;) {
      if (j % 2 == 0) {
        even = even * (-y2) + c[j];
      } else {
        odd = odd * (-y2) + c[j];
      }
    }
    return {even, odd * y};
  }
  std::complex<T> acc = c[N - 1];
  for (std::size_t j = N - 1; j-- > 0;) acc = acc * z + c[j];
  return acc;
}

template <std::floating_point T>
std::complex<T> divide(std::complex<T> num, std::complex<T> den) {
  const T mag2 = std::norm(den);
  if (!(mag2 > T(0))) {
    throw PoleError("rational stage operator evaluated at a pole");
  }
  return num * std::conj(den) / mag2;
}

template <std::floating_point T, std::size_t N, std::size_t D>
std::complex<T> rational(const std::array<T, N>& num,
                         const std::array<T, D>& den, std::complex<T> z) {
  return divide(polynomial(num, z), polynomial(den, z));
}

template <std::floating_point T>
constexpr std::array<T, 3> den22{12, 6, 1};
template <std::floating_point T>
constexpr std::array<T, 3> den22_half{48, 12, 1};
template <std::floating_point T>
constexpr std::array<T, 4> den13{24, 18, 6, 1};
template <std::floating_point T>
constexpr std::array<T, 4> den13_half{192, 72, 12, 1};

}  // namespace detail

// All arguments are z = kA. The R-functions approximate exp(-z) (or
// exp(-z/2) for the tilde variants); the P-functions are the stage weights
// that carry the step size k.

/// (12 - 6z + z^2) / (12 + 6z + z^2)
template <std::floating_point T>
std::complex<T> r22(std::complex<T> z) {
  return detail::rational(std::array<T, 3>{12, -6, 1}, detail::den22<T>, z);
}

/// (48 - 12z + z^2) / (48 + 12z + z^2)
template <std::floating_point T>
std::complex<T> r22_tilde(std::complex<T> z) {
  return detail::rational(std::array<T, 3>{48, -12, 1}, detail::den22_half<T>,
                          z);
}

/// 12k / (12 + 6z + z^2)
template <std::floating_point T>
std::complex<T> p1(T k, std::complex<T> z) {
  return detail::rational(std::array<T, 1>{12 * k}, detail::den22<T>, z);
}

/// k(6 + z) / (12 + 6z + z^2), the approximant of k phi_2(-z) on this
/// denominator. Written as k(6 - z) it only matches phi_2 at z = 0 and the
/// scheme falls to second order.
template <std::floating_point T>
std::complex<T> p2(T k, std::complex<T> z) {
  return detail::rational(std::array<T, 2>{6 * k, k}, detail::den22<T>, z);
}

/// 2k(4 + z) / (12 + 6z + z^2), approximating 4k phi_3(-z). Same sign
/// remark as p2.
template <std::floating_point T>
std::complex<T> p3(T k, std::complex<T> z) {
  return detail::rational(std::array<T, 2>{8 * k, 2 * k}, detail::den22<T>,
                          z);
}

/// 24k / (48 + 12z + z^2)
template <std::floating_point T>
std::complex<T> p1_tilde(T k, std::complex<T> z) {
  return detail::rational(std::array<T, 1>{24 * k}, detail::den22_half<T>, z);
}

/// 2k(12 + z) / (48 + 12z + z^2)
template <std::floating_point T>
std::complex<T> p2_tilde(T k, std::complex<T> z) {
  return detail::rational(std::array<T, 2>{24 * k, 2 * k},
                          detail::den22_half<T>, z);
}

/// (24 - 6z) / (24 + 18z + 6z^2 + z^3), i.e. (1 - z/4)/(1 + 3z/4 + ...)
template <std::floating_point T>
std::complex<T> r13(std::complex<T> z) {
  return detail::rational(std::array<T, 2>{24, -6}, detail::den13<T>, z);
}

/// 24(8 - z) / (192 + 72z + 12z^2 + z^3), equal to r13(z/2).
template <std::floating_point T>
std::complex<T> r13_tilde(std::complex<T> z) {
  return detail::rational(std::array<T, 2>{192, -24}, detail::den13_half<T>,
                          z);
}

}  // namespace pade

/// Elementwise stage operators for one step size and one dispersion
/// coefficient, laid out like the Laplacian symbol. Only the arrays of the
/// selected scheme are populated.
struct StageTables {
  StepperKind scheme = StepperKind::KrogstadP22;
  double k = 0.0;

  // KrogstadP22
  std::vector<Complex> r22, p1, p2, p3, r22_tilde, p1_tilde, p2_tilde;
  // IFRK4P13
  std::vector<Complex> r13, r13_tilde;

  std::size_t size() const;
};

/// Tables at z = i k alpha Lambda. Throws std::invalid_argument unless k > 0
/// and finite.
StageTables build_tables(StepperKind scheme, double k, double alpha,
                         const LaplacianSymbol& symbol);

/// Tables at arbitrary complex arguments z = kA (used by the stability
/// analysis, where the linear part need not be dispersive).
StageTables build_tables_from_arguments(StepperKind scheme, double k,
                                        std::span<const Complex> z);

}  // namespace cnls
