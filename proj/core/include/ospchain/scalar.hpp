#pragma once

#include <cmath>
#include <complex>
#include <concepts>
#include <cstdio>
#include <string>

#include "ospchain/gaussian_rational.hpp"
#include "ospchain/rational_function.hpp"

namespace ospchain {

using Complex = std::complex<double>;

/// Uniform interface over the three scalar fields used by the operator code.
template <class S>
struct ScalarTraits;

template <>
struct ScalarTraits<GaussianRational> {
  static constexpr bool exact = true;
  static GaussianRational from(const GaussianRational& z) { return z; }
  static bool is_zero(const GaussianRational& z) { return z.is_zero(); }
  static double magnitude(const GaussianRational& z) { return std::sqrt(z.norm().get_d()); }
  static std::string render(const GaussianRational& z) { return z.to_string(); }
  static GaussianRational i() { return GaussianRational::i(); }
};

template <>
struct ScalarTraits<Complex> {
  static constexpr bool exact = false;
  static Complex from(const GaussianRational& z) { return {z.real().get_d(), z.imag().get_d()}; }
  static bool is_zero(const Complex& z) { return z == Complex(0.0, 0.0); }
  static double magnitude(const Complex& z) { return std::abs(z); }
  static std::string render(const Complex& z) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g%+.17g*i", z.real(), z.imag());
    return buf;
  }
  static Complex i() { return {0.0, 1.0}; }
};

template <>
struct ScalarTraits<RationalFunction> {
  static constexpr bool exact = true;
  static RationalFunction from(const GaussianRational& z) { return RationalFunction(z); }
  static bool is_zero(const RationalFunction& z) { return z.is_zero(); }
  static double magnitude(const RationalFunction& z) { return z.is_zero() ? 0.0 : 1.0; }
  static std::string render(const RationalFunction& z) { return z.to_string(); }
  static RationalFunction i() { return RationalFunction(GaussianRational::i()); }
};

template <class S>
concept Scalar = requires(S a, S b) {
  { a + b } -> std::convertible_to<S>;
  { a - b } -> std::convertible_to<S>;
  { a * b } -> std::convertible_to<S>;
  { ScalarTraits<S>::from(GaussianRational()) } -> std::convertible_to<S>;
  { ScalarTraits<S>::is_zero(a) } -> std::convertible_to<bool>;
};

/// Exact max(|re|,|im|) rendered for reports; floats are rendered as doubles.
inline std::string render_magnitude(const GaussianRational& z) { return render_rational(z.max_abs_component()); }
inline std::string render_magnitude(const Complex& z) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6e", std::abs(z));
  return buf;
}

}  // namespace ospchain
