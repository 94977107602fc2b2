#include "ospchain/rational_function.hpp"

#include "ospchain/errors.hpp"

namespace ospchain {

RationalFunction::RationalFunction(Polynomial num, Polynomial den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw DivisionByZero();
  canonicalize();
}

void RationalFunction::canonicalize() {
  if (num_.is_zero()) {
    den_ = Polynomial(1);
    return;
  }
  if (den_.degree() > 0) {
    Polynomial g = Polynomial::gcd(num_, den_);
    if (g.degree() > 0) {
      num_ = Polynomial::divmod(num_, g).first;
      den_ = Polynomial::divmod(den_, g).first;
    }
  }
  GaussianRational lead = den_.leading();
  if (lead != GaussianRational(1)) {
    GaussianRational inv = GaussianRational(1) / lead;
    num_ *= inv;
    den_ *= inv;
  }
}

GaussianRational RationalFunction::constant_value() const {
  if (!is_constant()) throw DomainError("rational function is not constant: " + to_string());
  return num_.coeff(0);
}

GaussianRational RationalFunction::eval(const GaussianRational& x) const {
  GaussianRational d = den_.eval(x);
  if (d.is_zero()) throw PoleError(x.to_string());
  return num_.eval(x) / d;
}

std::complex<double> RationalFunction::eval(std::complex<double> x) const { return num_.eval(x) / den_.eval(x); }

RationalFunction RationalFunction::compose(const RationalFunction& g) const {
  auto horner = [&](const Polynomial& p) {
    RationalFunction acc;
    for (auto it = p.coeffs().rbegin(); it != p.coeffs().rend(); ++it) acc = acc * g + RationalFunction(*it);
    return acc;
  };
  RationalFunction d = horner(den_);
  if (d.is_zero()) throw PoleError(g.to_string());
  return horner(num_) / d;
}

RationalFunction RationalFunction::substitute_affine(const GaussianRational& a, const GaussianRational& b) const {
  return {num_.substitute_affine(a, b), den_.substitute_affine(a, b)};
}

GaussianRational RationalFunction::limit_at_infinity() const {
  if (num_.degree() < den_.degree()) return {};
  if (num_.degree() == den_.degree()) return num_.leading() / den_.leading();
  throw PoleError("infinity");
}

RationalFunction& RationalFunction::operator+=(const RationalFunction& o) {
  if (den_ == o.den_) {
    num_ += o.num_;
  } else {
    num_ = num_ * o.den_ + o.num_ * den_;
    den_ *= o.den_;
  }
  canonicalize();
  return *this;
}

RationalFunction& RationalFunction::operator-=(const RationalFunction& o) {
  if (den_ == o.den_) {
    num_ -= o.num_;
  } else {
    num_ = num_ * o.den_ - o.num_ * den_;
    den_ *= o.den_;
  }
  canonicalize();
  return *this;
}

RationalFunction& RationalFunction::operator*=(const RationalFunction& o) {
  num_ *= o.num_;
  den_ *= o.den_;
  canonicalize();
  return *this;
}

RationalFunction& RationalFunction::operator/=(const RationalFunction& o) {
  if (o.is_zero()) throw DivisionByZero();
  num_ *= o.den_;
  den_ *= o.num_;
  canonicalize();
  return *this;
}

std::string RationalFunction::to_string(const std::string& var) const {
  mpz_class l = denominator_lcm(num_);
  mpz_class ld = denominator_lcm(den_);
  mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), ld.get_mpz_t());
  GaussianRational scale{mpq_class(l), mpq_class(0)};
  Polynomial n = num_;
  Polynomial d = den_;
  n *= scale;
  d *= scale;
  return n.to_string(var) + " / " + d.to_string(var);
}

}  // namespace ospchain
