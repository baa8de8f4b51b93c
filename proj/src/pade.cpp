#include "cnls/pade.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <string>

namespace cnls {

std::string_view to_string(StepperKind kind) {
  switch (kind) {
    case StepperKind::KrogstadP22:
      return "krogstad-p22";
    case StepperKind::IFRK4P13:
      return "ifrk4-p13";
  }
  return "unknown";
}

StepperKind parse_stepper_kind(std::string_view name) {
  std::string s(name);
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) {
    return c == '_' ? '-' : static_cast<char>(std::tolower(c));
  });
  if (s == "krogstad-p22" || s == "krogstad") return StepperKind::KrogstadP22;
  if (s == "ifrk4-p13" || s == "ifrk4") return StepperKind::IFRK4P13;
  throw std::invalid_argument("unknown stepper '" + std::string(name) + "'");
}

std::size_t StageTables::size() const {
  return scheme == StepperKind::KrogstadP22 ? r22.size() : r13.size();
}

StageTables build_tables_from_arguments(StepperKind scheme, double k,
                                        std::span<const Complex> z) {
  if (!(k > 0.0) || !std::isfinite(k)) {
    throw std::invalid_argument("time step must be positive and finite");
  }
  StageTables t;
  t.scheme = scheme;
  t.k = k;
  const std::size_t n = z.size();
  if (scheme == StepperKind::KrogstadP22) {
    t.r22.resize(n);
    t.p1.resize(n);
    t.p2.resize(n);
    t.p3.resize(n);
    t.r22_tilde.resize(n);
    t.p1_tilde.resize(n);
    t.p2_tilde.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      t.r22[i] = pade::r22(z[i]);
      t.p1[i] = pade::p1(k, z[i]);
      t.p2[i] = pade::p2(k, z[i]);
      t.p3[i] = pade::p3(k, z[i]);
      t.r22_tilde[i] = pade::r22_tilde(z[i]);
      t.p1_tilde[i] = pade::p1_tilde(k, z[i]);
      t.p2_tilde[i] = pade::p2_tilde(k, z[i]);
    }
  } else {
    t.r13.resize(n);
    t.r13_tilde.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      t.r13[i] = pade::r13(z[i]);
      t.r13_tilde[i] = pade::r13_tilde(z[i]);
    }
  }
  return t;
}

StageTables build_tables(StepperKind scheme, double k, double alpha,
                         const LaplacianSymbol& symbol) {
  std::vector<Complex> z(symbol.values.size());
  for (std::size_t i = 0; i < z.size(); ++i) {
    z[i] = Complex(0.0, k * alpha * symbol.values[i]);
  }
  return build_tables_from_arguments(scheme, k, z);
}

}  // namespace cnls
