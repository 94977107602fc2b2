#pragma once

#include <complex>
#include <string>
#include <utility>
#include <vector>

#include "ospchain/gaussian_rational.hpp"

namespace ospchain {

/// Dense univariate polynomial over Q(i); coefficient k multiplies x^k.
/// Trailing zero coefficients are always trimmed, so the zero polynomial
/// has an empty coefficient vector.
class Polynomial {
 public:
  Polynomial() = default;
  Polynomial(GaussianRational constant);  // NOLINT(google-explicit-constructor)
  Polynomial(long constant) : Polynomial(GaussianRational(constant)) {}  // NOLINT
  explicit Polynomial(std::vector<GaussianRational> coeffs);

  /// The monomial x.
  static Polynomial x();
  /// x - root.
  static Polynomial linear_root(const GaussianRational& root);

  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const noexcept { return coeffs_.empty(); }
  const std::vector<GaussianRational>& coeffs() const noexcept { return coeffs_; }
  GaussianRational coeff(int k) const;
  GaussianRational leading() const;

  GaussianRational eval(const GaussianRational& x) const;
  std::complex<double> eval(std::complex<double> x) const;

  /// p(a*x + b).
  Polynomial substitute_affine(const GaussianRational& a, const GaussianRational& b) const;
  Polynomial derivative() const;
  Polynomial monic() const;

  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(const Polynomial& o);
  Polynomial& operator*=(const GaussianRational& s);

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, const Polynomial& b) { return a *= b; }
  Polynomial operator-() const;

  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.coeffs_ == b.coeffs_; }
  friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

  /// Euclidean division; throws DivisionByZero for a zero divisor.
  static std::pair<Polynomial, Polynomial> divmod(const Polynomial& a, const Polynomial& b);
  /// Monic gcd (zero when both are zero).
  static Polynomial gcd(Polynomial a, Polynomial b);

  /// Rendering with the given coefficient scale folded in, e.g. "2*x^2 + (1+i)*x - 3".
  std::string to_string(const std::string& var = "x") const;

 private:
  void trim();
  std::vector<GaussianRational> coeffs_;
};

/// Least common multiple of all component denominators of the coefficients.
mpz_class denominator_lcm(const Polynomial& p);

}  // namespace ospchain
