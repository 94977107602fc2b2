#include "ospchain/polynomial.hpp"

#include <algorithm>

#include "ospchain/errors.hpp"

namespace ospchain {

Polynomial::Polynomial(GaussianRational constant) {
  if (!constant.is_zero()) coeffs_.push_back(std::move(constant));
}

Polynomial::Polynomial(std::vector<GaussianRational> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

Polynomial Polynomial::x() { return Polynomial(std::vector<GaussianRational>{0, 1}); }

Polynomial Polynomial::linear_root(const GaussianRational& root) {
  return Polynomial(std::vector<GaussianRational>{-root, 1});
}

void Polynomial::trim() {
  while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

GaussianRational Polynomial::coeff(int k) const {
  if (k < 0 || k > degree()) return {};
  return coeffs_[static_cast<std::size_t>(k)];
}

GaussianRational Polynomial::leading() const { return coeffs_.empty() ? GaussianRational() : coeffs_.back(); }

GaussianRational Polynomial::eval(const GaussianRational& x) const {
  GaussianRational acc;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    acc *= x;
    acc += *it;
  }
  return acc;
}

std::complex<double> Polynomial::eval(std::complex<double> x) const {
  std::complex<double> acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    acc = acc * x + std::complex<double>(it->real().get_d(), it->imag().get_d());
  }
  return acc;
}

Polynomial Polynomial::substitute_affine(const GaussianRational& a, const GaussianRational& b) const {
  Polynomial lin(std::vector<GaussianRational>{b, a});
  Polynomial acc;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    acc *= lin;
    acc += Polynomial(*it);
  }
  return acc;
}

Polynomial Polynomial::derivative() const {
  std::vector<GaussianRational> out;
  for (std::size_t k = 1; k < coeffs_.size(); ++k) out.push_back(coeffs_[k] * GaussianRational(static_cast<long>(k)));
  return Polynomial(std::move(out));
}

Polynomial Polynomial::monic() const {
  if (is_zero()) return *this;
  Polynomial out = *this;
  GaussianRational inv = GaussianRational(1) / leading();
  out *= inv;
  return out;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
  for (std::size_t k = 0; k < o.coeffs_.size(); ++k) coeffs_[k] += o.coeffs_[k];
  trim();
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
  for (std::size_t k = 0; k < o.coeffs_.size(); ++k) coeffs_[k] -= o.coeffs_[k];
  trim();
  return *this;
}

Polynomial& Polynomial::operator*=(const Polynomial& o) {
  if (is_zero() || o.is_zero()) {
    coeffs_.clear();
    return *this;
  }
  std::vector<GaussianRational> out(coeffs_.size() + o.coeffs_.size() - 1);
  for (std::size_t a = 0; a < coeffs_.size(); ++a) {
    if (coeffs_[a].is_zero()) continue;
    for (std::size_t b = 0; b < o.coeffs_.size(); ++b) out[a + b] += coeffs_[a] * o.coeffs_[b];
  }
  coeffs_ = std::move(out);
  trim();
  return *this;
}

Polynomial& Polynomial::operator*=(const GaussianRational& s) {
  if (s.is_zero()) {
    coeffs_.clear();
    return *this;
  }
  for (auto& c : coeffs_) c *= s;
  return *this;
}

Polynomial Polynomial::operator-() const {
  Polynomial out = *this;
  for (auto& c : out.coeffs_) c = -c;
  return out;
}

std::pair<Polynomial, Polynomial> Polynomial::divmod(const Polynomial& a, const Polynomial& b) {
  if (b.is_zero()) throw DivisionByZero();
  if (a.degree() < b.degree()) return {Polynomial(), a};
  std::vector<GaussianRational> rem = a.coeffs_;
  std::vector<GaussianRational> quot(static_cast<std::size_t>(a.degree() - b.degree() + 1));
  GaussianRational inv_lead = GaussianRational(1) / b.leading();
  const int db = b.degree();
  for (int k = a.degree(); k >= db; --k) {
    GaussianRational coef = rem[static_cast<std::size_t>(k)] * inv_lead;
    if (coef.is_zero()) continue;
    quot[static_cast<std::size_t>(k - db)] = coef;
    for (int j = 0; j <= db; ++j) rem[static_cast<std::size_t>(k - db + j)] -= coef * b.coeffs_[static_cast<std::size_t>(j)];
  }
  return {Polynomial(std::move(quot)), Polynomial(std::move(rem))};
}

Polynomial Polynomial::gcd(Polynomial a, Polynomial b) {
  while (!b.is_zero()) {
    Polynomial r = divmod(a, b).second;
    a = std::move(b);
    b = r.monic();
  }
  return a.monic();
}

mpz_class denominator_lcm(const Polynomial& p) {
  mpz_class l = 1;
  for (const auto& c : p.coeffs()) {
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.real().get_den_mpz_t());
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.imag().get_den_mpz_t());
  }
  return l;
}

std::string Polynomial::to_string(const std::string& var) const {
  if (is_zero()) return "0";
  std::string out;
  for (int k = degree(); k >= 0; --k) {
    const GaussianRational& c = coeffs_[static_cast<std::size_t>(k)];
    if (c.is_zero()) continue;
    std::string cs;
    bool negative = false;
    if (c.is_real()) {
      negative = sgn(c.real()) < 0;
      cs = render_rational(abs(c.real()));
    } else if (sgn(c.real()) == 0) {
      negative = sgn(c.imag()) < 0;
      cs = GaussianRational(mpq_class(0), abs(c.imag())).to_string();
    } else {
      cs = "(" + c.to_string() + ")";
    }
    if (out.empty()) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    std::string mono = k == 0 ? "" : (k == 1 ? var : var + "^" + std::to_string(k));
    if (mono.empty()) {
      out += cs;
    } else if (cs == "1") {
      out += mono;
    } else {
      out += cs + "*" + mono;
    }
  }
  return out;
}

}  // namespace ospchain
