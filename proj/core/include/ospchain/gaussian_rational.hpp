#pragma once

#include <gmpxx.h>

#include <iosfwd>
#include <string>
#include <string_view>

namespace ospchain {

/// Exact element of Q(i). Both components are kept in GMP canonical form.
class GaussianRational {
 public:
  GaussianRational() = default;
  GaussianRational(long value) : re_(value) {}  // NOLINT(google-explicit-constructor)
  GaussianRational(long num, long den);
  GaussianRational(mpq_class re, mpq_class im = 0);

  static GaussianRational i() { return {mpq_class(0), mpq_class(1)}; }

  /// Accepts "3", "-1/2", "1/2+1/3*i", "i", "-2*i", "1/2-i".
  static GaussianRational parse(std::string_view text);

  const mpq_class& real() const noexcept { return re_; }
  const mpq_class& imag() const noexcept { return im_; }

  bool is_zero() const noexcept { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_real() const noexcept { return sgn(im_) == 0; }

  GaussianRational conj() const { return {re_, -im_}; }
  mpq_class norm() const { return re_ * re_ + im_ * im_; }
  /// max(|re|, |im|); used as an exact entry magnitude.
  mpq_class max_abs_component() const;

  GaussianRational& operator+=(const GaussianRational& o);
  GaussianRational& operator-=(const GaussianRational& o);
  GaussianRational& operator*=(const GaussianRational& o);
  GaussianRational& operator/=(const GaussianRational& o);

  friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
  friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
  friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
  friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }
  GaussianRational operator-() const { return {-re_, -im_}; }

  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }
  friend bool operator!=(const GaussianRational& a, const GaussianRational& b) { return !(a == b); }

  /// Renders as "a/b+c/d*i" (components omitted when zero).
  std::string to_string() const;

 private:
  mpq_class re_{0};
  mpq_class im_{0};
};

std::ostream& operator<<(std::ostream& os, const GaussianRational& z);

std::string render_rational(const mpq_class& q);

}  // namespace ospchain
