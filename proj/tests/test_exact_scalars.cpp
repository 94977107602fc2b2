#include <random>

#include "doctest.h"
#include "ospchain/errors.hpp"
#include "ospchain/rational_function.hpp"
#include "ospchain/sampling.hpp"
#include "ospchain/scalar.hpp"

using namespace ospchain;
using G = GaussianRational;

namespace {

G gr(long a, long b, long c, long d) { return {mpq_class(a, b), mpq_class(c, d)}; }

}  // namespace

TEST_CASE("gaussian rational arithmetic") {
  G i = G::i();
  CHECK((G(1) + i) * (G(1) - i) == G(2));
  CHECK(G(1) / i == -i);
  CHECK(gr(1, 2, 1, 3) + gr(1, 2, -1, 3) == G(1));
  CHECK_THROWS_AS(G(1) / G(0), DivisionByZero);
  CHECK(G(4, 6) == G(2, 3));
  CHECK(G(2, -4).real().get_den() == 2);
}

TEST_CASE("gaussian rational rendering and parsing") {
  CHECK(gr(1, 2, -1, 3).to_string() == "1/2-1/3*i");
  CHECK(G::i().to_string() == "i");
  CHECK((-G::i()).to_string() == "-i");
  CHECK(G(-3, 4).to_string() == "-3/4");
  for (const char* s : {"0", "7", "-1/2", "1/2+1/3*i", "-2*i", "i", "-i", "3-i", "-5/7-2/9*i"}) {
    G z = G::parse(s);
    CHECK(G::parse(z.to_string()) == z);
  }
  CHECK(G::parse("1/2-1/3*i") == gr(1, 2, -1, 3));
  CHECK(G::parse(" 2 + i ") == gr(2, 1, 1, 1));
  CHECK_THROWS_AS(G::parse("abc"), ValidationError);
  CHECK_THROWS_AS(G::parse("1/0"), ValidationError);
}

TEST_CASE("field axioms on random triples") {
  RationalSampler rs(11, 50);
  for (int t = 0; t < 200; ++t) {
    G a{rs.rational().real(), rs.rational().real()};
    G b{rs.rational().real(), rs.rational().real()};
    G c{rs.rational().real(), rs.rational().real()};
    CHECK((a + b) + c == a + (b + c));
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a * b == b * a);
    if (!a.is_zero()) CHECK(a * (G(1) / a) == G(1));
    CHECK(a - a == G(0));
  }
}

TEST_CASE("polynomial division and gcd") {
  Polynomial x = Polynomial::x();
  Polynomial p = x * x - Polynomial(1);
  auto [q, r] = Polynomial::divmod(p, x - Polynomial(1));
  CHECK(q == x + Polynomial(1));
  CHECK(r.is_zero());
  CHECK(Polynomial::gcd(p, x * x + x * Polynomial(2) + Polynomial(1)) == x + Polynomial(1));
  CHECK(p.substitute_affine(G(2), G(1)) == (x * Polynomial(2) + Polynomial(1)) * (x * Polynomial(2) + Polynomial(1)) - Polynomial(1));
  CHECK(p.derivative() == x * Polynomial(2));
  CHECK((x * G::i() - Polynomial(3)).to_string() == "i*x - 3");
}

TEST_CASE("rational function canonical form") {
  RationalFunction x = RationalFunction::x();
  G i = G::i();
  RationalFunction f = (x + RationalFunction(i)) / (x - RationalFunction(i));
  CHECK(f.eval(G(0)) == G(-1));
  RationalFunction g = (x * x - RationalFunction(1)) / (x - RationalFunction(1));
  CHECK(g == x + RationalFunction(1));
  CHECK(g.denominator() == Polynomial(1));
  G kappa(-3, 2);
  RationalFunction h = RationalFunction(1) / (x + RationalFunction(kappa));
  CHECK_THROWS_AS(h.eval(-kappa), PoleError);
  try {
    h.eval(-kappa);
  } catch (const PoleError& e) {
    CHECK(e.point() == "3/2");
  }
  // Idempotent canonicalization.
  RationalFunction c(g.numerator() * Polynomial(G(3)), g.denominator() * Polynomial(G(3)));
  CHECK(c == g);
  CHECK(RationalFunction(c.numerator(), c.denominator()) == c);
  CHECK(((x * x + RationalFunction(1)) / (x * x * RationalFunction(2))).limit_at_infinity() == G(1, 2));
  CHECK_THROWS_AS(x.limit_at_infinity(), PoleError);
  CHECK(((x + RationalFunction(G(1, 2))) / (x * RationalFunction(3))).to_string() == "2*x + 1 / 6*x");
  CHECK((x.substitute_affine(G(2), G(1))).eval(G(3)) == G(7));
}

TEST_CASE("rational function evaluation homomorphism") {
  RationalSampler rs(5, 20);
  RationalFunction x = RationalFunction::x();
  for (int t = 0; t < 30; ++t) {
    RationalFunction f = (x * RationalFunction(rs.rational()) + RationalFunction(rs.rational())) /
                         (x * x + RationalFunction(rs.nonzero_rational()));
    RationalFunction g = (x - RationalFunction(rs.rational())) / (x * RationalFunction(rs.nonzero_rational()) + RationalFunction(G::i()));
    G pt = rs.rational();
    try {
      G fv = f.eval(pt);
      G gv = g.eval(pt);
      CHECK((f + g).eval(pt) == fv + gv);
      CHECK((f - g).eval(pt) == fv - gv);
      CHECK((f * g).eval(pt) == fv * gv);
      if (!gv.is_zero()) CHECK((f / g).eval(pt) == fv / gv);
      Complex fz = f.eval(ScalarTraits<Complex>::from(pt));
      CHECK(std::abs(fz - ScalarTraits<Complex>::from(fv)) < 1e-12 * (1 + std::abs(fz)));
    } catch (const PoleError&) {
    }
  }
}

TEST_CASE("sampler is deterministic") {
  RationalSampler a(42), b(42);
  for (int k = 0; k < 20; ++k) CHECK(a.rational() == b.rational());
  RationalSampler c(42);
  auto v = c.rationals(50);
  for (const auto& z : v) {
    CHECK(!z.is_zero());
    CHECK(abs(z.real().get_num()) <= 100);
    CHECK(z.real().get_den() <= 100);
  }
}
