#pragma once

#include <complex>
#include <string>

#include "ospchain/polynomial.hpp"

namespace ospchain {

/// Ratio of polynomials over Q(i) in one formal variable, kept coprime
/// with a monic denominator. Two canonical forms are equal as functions
/// if and only if they are structurally equal.
class RationalFunction {
 public:
  RationalFunction() : den_(1) {}
  RationalFunction(GaussianRational constant) : num_(std::move(constant)), den_(1) {}  // NOLINT
  RationalFunction(long constant) : RationalFunction(GaussianRational(constant)) {}  // NOLINT
  RationalFunction(Polynomial num) : num_(std::move(num)), den_(1) {}  // NOLINT
  RationalFunction(Polynomial num, Polynomial den);

  static RationalFunction x() { return RationalFunction(Polynomial::x()); }

  const Polynomial& numerator() const noexcept { return num_; }
  const Polynomial& denominator() const noexcept { return den_; }
  bool is_zero() const noexcept { return num_.is_zero(); }
  bool is_constant() const noexcept { return num_.degree() <= 0 && den_.degree() == 0; }
  /// Constant value; throws DomainError when not constant.
  GaussianRational constant_value() const;

  /// Exact substitution; throws PoleError when the denominator vanishes.
  GaussianRational eval(const GaussianRational& x) const;
  std::complex<double> eval(std::complex<double> x) const;

  /// f(g(x)); throws PoleError when the denominator vanishes identically.
  RationalFunction compose(const RationalFunction& g) const;

  /// f(a*x + b).
  RationalFunction substitute_affine(const GaussianRational& a, const GaussianRational& b) const;
  /// Value as x -> infinity; throws PoleError("infinity") when it diverges.
  GaussianRational limit_at_infinity() const;

  RationalFunction& operator+=(const RationalFunction& o);
  RationalFunction& operator-=(const RationalFunction& o);
  RationalFunction& operator*=(const RationalFunction& o);
  RationalFunction& operator/=(const RationalFunction& o);

  friend RationalFunction operator+(RationalFunction a, const RationalFunction& b) { return a += b; }
  friend RationalFunction operator-(RationalFunction a, const RationalFunction& b) { return a -= b; }
  friend RationalFunction operator*(RationalFunction a, const RationalFunction& b) { return a *= b; }
  friend RationalFunction operator/(RationalFunction a, const RationalFunction& b) { return a /= b; }
  RationalFunction operator-() const { return {-num_, den_}; }

  friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const RationalFunction& a, const RationalFunction& b) { return !(a == b); }

  /// "poly / poly" with both sides scaled to Gaussian-integer coefficients.
  std::string to_string(const std::string& var = "x") const;

 private:
  void canonicalize();
  Polynomial num_;
  Polynomial den_;
};

}  // namespace ospchain
