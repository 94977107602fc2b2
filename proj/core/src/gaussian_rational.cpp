#include "ospchain/gaussian_rational.hpp"

#include <cctype>
#include <ostream>

#include "ospchain/errors.hpp"

namespace ospchain {

namespace {

mpq_class parse_rational(std::string_view text) {
  if (text.empty()) throw ValidationError("empty rational literal");
  std::string s(text);
  for (char c : s) {
    if (!(std::isdigit(static_cast<unsigned char>(c)) || c == '/' || c == '-' || c == '+')) {
      throw ValidationError("malformed rational literal '" + s + "'");
    }
  }
  if (s.front() == '+') s.erase(0, 1);
  mpq_class q;
  if (q.set_str(s, 10) != 0) throw ValidationError("malformed rational literal '" + s + "'");
  if (q.get_den() == 0) throw ValidationError("zero denominator in '" + s + "'");
  q.canonicalize();
  return q;
}

}  // namespace

GaussianRational::GaussianRational(long num, long den) {
  if (den == 0) throw DivisionByZero();
  re_ = mpq_class(num, den);
  re_.canonicalize();
}

GaussianRational::GaussianRational(mpq_class re, mpq_class im) : re_(std::move(re)), im_(std::move(im)) {
  re_.canonicalize();
  im_.canonicalize();
}

GaussianRational GaussianRational::parse(std::string_view text) {
  std::string s;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  }
  if (s.empty()) throw ValidationError("empty scalar literal");
  if (s.back() != 'i') return {parse_rational(s), mpq_class(0)};

  // Imaginary part present: split at the last sign that is not the leading one.
  std::string body = s.substr(0, s.size() - 1);
  if (!body.empty() && body.back() == '*') body.pop_back();
  std::size_t split = std::string::npos;
  for (std::size_t k = body.size(); k-- > 1;) {
    if (body[k] == '+' || body[k] == '-') {
      split = k;
      break;
    }
  }
  std::string re_part = split == std::string::npos ? "" : body.substr(0, split);
  std::string im_part = split == std::string::npos ? body : body.substr(split);
  mpq_class im;
  if (im_part.empty() || im_part == "+") {
    im = 1;
  } else if (im_part == "-") {
    im = -1;
  } else {
    im = parse_rational(im_part);
  }
  mpq_class re = re_part.empty() ? mpq_class(0) : parse_rational(re_part);
  return {re, im};
}

mpq_class GaussianRational::max_abs_component() const {
  mpq_class a = abs(re_);
  mpq_class b = abs(im_);
  return a > b ? a : b;
}

GaussianRational& GaussianRational::operator+=(const GaussianRational& o) {
  re_ += o.re_;
  im_ += o.im_;
  return *this;
}

GaussianRational& GaussianRational::operator-=(const GaussianRational& o) {
  re_ -= o.re_;
  im_ -= o.im_;
  return *this;
}

GaussianRational& GaussianRational::operator*=(const GaussianRational& o) {
  if (sgn(im_) == 0 && sgn(o.im_) == 0) {
    re_ *= o.re_;
    return *this;
  }
  mpq_class re = re_ * o.re_ - im_ * o.im_;
  mpq_class im = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

GaussianRational& GaussianRational::operator/=(const GaussianRational& o) {
  if (o.is_zero()) throw DivisionByZero();
  if (sgn(o.im_) == 0) {
    re_ /= o.re_;
    im_ /= o.re_;
    return *this;
  }
  mpq_class n = o.norm();
  mpq_class re = (re_ * o.re_ + im_ * o.im_) / n;
  mpq_class im = (im_ * o.re_ - re_ * o.im_) / n;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

std::string render_rational(const mpq_class& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::string GaussianRational::to_string() const {
  if (sgn(im_) == 0) return render_rational(re_);
  std::string im_str;
  if (im_ == 1) {
    im_str = "i";
  } else if (im_ == -1) {
    im_str = "-i";
  } else {
    im_str = render_rational(im_) + "*i";
  }
  if (sgn(re_) == 0) return im_str;
  std::string out = render_rational(re_);
  if (im_str.front() != '-') out += "+";
  return out + im_str;
}

std::ostream& operator<<(std::ostream& os, const GaussianRational& z) { return os << z.to_string(); }

}  // namespace ospchain
