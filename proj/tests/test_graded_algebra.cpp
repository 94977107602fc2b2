#include <algorithm>
#include <complex>

#include <Eigen/Eigenvalues>

#include "doctest.h"
#include "ospchain/graded_ops.hpp"
#include "ospchain/sampling.hpp"

using namespace ospchain;
using G = GaussianRational;
using Op = GradedOperator<G>;

namespace {

const std::vector<std::pair<int, int>> kModels{{2, 0}, {3, 0}, {4, 0}, {0, 1}, {0, 2}, {1, 1}, {2, 1}, {3, 1}, {2, 2},
                                               {1, 2}, {4, 2}, {8, 0}, {0, 4}};

Op random_op(std::vector<GradedSpace> f, RationalSampler& rs, int density = 3) {
  Op out(std::move(f));
  for (std::size_t i = 0; i < out.size(); ++i) {
    for (std::size_t j = 0; j < out.size(); ++j) {
      if (rs.uniform_int(0, density) == 0) out.set(i, j, rs.rational());
    }
  }
  return out;
}

std::vector<std::complex<double>> spectrum(const Op& a) {
  Eigen::MatrixXcd m(a.size(), a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j) m(i, j) = ScalarTraits<Complex>::from(a.get(i, j));
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(m, false);
  std::vector<std::complex<double>> ev(es.eigenvalues().data(), es.eigenvalues().data() + a.size());
  return ev;
}

/// Largest distance under greedy nearest matching of two spectra.
double spectral_distance(std::vector<std::complex<double>> a, std::vector<std::complex<double>> b) {
  double worst = 0.0;
  for (auto z : a) {
    auto it = std::min_element(b.begin(), b.end(), [&](auto x, auto y) { return std::abs(x - z) < std::abs(y - z); });
    worst = std::max(worst, std::abs(*it - z));
    b.erase(it);
  }
  return worst;
}

}  // namespace

TEST_CASE("graded space data") {
  GradedSpace s(3, 2);
  CHECK(s.dim() == 7);
  for (int i = 0; i < s.dim(); ++i) {
    CHECK(s.conj(s.conj(i)) == i);
    CHECK(s.grade(s.conj(i)) == s.grade(i));
  }
  CHECK(s.conj(0) == 2);
  CHECK(s.conj(1) == 1);
  CHECK(s.conj(3) == 6);
  CHECK(s.conj(4) == 5);
  CHECK(s.theta(0) == 1);
  CHECK(s.theta(3) == 1);
  CHECK(s.theta(4) == 1);
  CHECK(s.theta(5) == -1);
  CHECK(s.theta(6) == -1);
  CHECK_THROWS_AS(GradedSpace(-1, 0), ValidationError);
  CHECK_THROWS_AS(GradedSpace(2, 0, {0, 0}), ValidationError);
}

TEST_CASE("super permutation") {
  Op P20 = build_P<G>(GradedSpace(2, 0));
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) CHECK(P20.get(i, j) == G((i / 2 == j % 2 && i % 2 == j / 2) ? 1 : 0));
  Op P01 = build_P<G>(GradedSpace(0, 1));
  CHECK(P01.get(0, 0) == G(-1));
  for (auto [M, n] : kModels) {
    GradedSpace s(M, n);
    Op P = build_P<G>(s);
    CHECK(P * P == Op::identity({s, s}));
  }
}

TEST_CASE("super kron") {
  RationalSampler rs(3, 9);
  GradedSpace b(2, 0), f(1, 1);
  Op A = random_op({b}, rs, 1), B = random_op({b}, rs, 1);
  Op K = super_kron(A, B);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t k = 0; k < 2; ++k)
      for (std::size_t j = 0; j < 2; ++j)
        for (std::size_t l = 0; l < 2; ++l) CHECK(K.get(i * 2 + k, j * 2 + l) == A.get(i, j) * B.get(k, l));
  CHECK(super_kron(Op::identity({f}), Op::identity({f})) == Op::identity({f, f}));
  // (E12 (x) E12) on C^{0|2}: sign (-1)^{[1]([1]+[2])} = +1 with both indices odd.
  GradedSpace s(0, 1);
  Op E12({s});
  E12.set(0, 1, G(1));
  CHECK(super_kron(E12, E12).get(0, 3) == G(1));
  // E12 on C^{1|2} maps odd to even, so the sign is (-1)^{[k]([i]+[j])} = -1 for odd k.
  Op X({f}), Y({f});
  X.set(0, 1, G(1));
  Y.set(1, 2, G(1));
  CHECK(super_kron(X, Y).get(0 * 3 + 1, 1 * 3 + 2) == G(-1));
  for (int t = 0; t < 5; ++t) {
    Op C = random_op({f}, rs, 1), D = random_op({GradedSpace(2, 1)}, rs, 1);
    CHECK(super_trace(super_kron(C, D)) == super_trace(C) * super_trace(D));
  }
}

TEST_CASE("super trace") {
  for (auto [M, n] : kModels) {
    GradedSpace s(M, n);
    CHECK(super_trace(Op::identity({s})) == G(M - 2 * n));
    Op P = build_P<G>(s);
    CHECK(partial_super_trace(P, "1") == Op::identity({s}, {"2"}));
    CHECK(partial_super_trace(P, "2") == Op::identity({s}, {"1"}));
  }
  GradedSpace s(2, 1);
  Op E({s});
  E.set(2, 2, G(1));
  CHECK(super_trace(E) == G(-1));
  CHECK_THROWS_AS(partial_super_trace(build_P<G>(s), "z"), DomainError);
}

TEST_CASE("partial super trace is compatible with super kron") {
  RationalSampler rs(8, 9);
  GradedSpace f(1, 1), g(2, 1);
  for (int t = 0; t < 4; ++t) {
    Op A = random_op({f}, rs, 1).with_labels({"a"});
    Op B = random_op({g}, rs, 1).with_labels({"b"});
    Op C = random_op({f}, rs, 1).with_labels({"c"});
    Op ABC = super_kron(super_kron(A, B), C);
    CHECK(partial_super_trace(ABC, "b") == super_kron(A, C) * super_trace(B));
    Op X = random_op({f, g, f}, rs, 4);
    Op Y = random_op({f, g, f}, rs, 4);
    CHECK(partial_super_trace_of_product(X, Y, "2") == partial_super_trace(X * Y, "2"));
    CHECK(partial_super_trace_of_product(X, Y, "1") == partial_super_trace(X * Y, "1"));
    CHECK(partial_super_trace_of_product(X, Y, "3") == partial_super_trace(X * Y, "3"));
  }
}

TEST_CASE("super transpose and Q") {
  RationalSampler rs(21, 9);
  for (auto [M, n] : kModels) {
    GradedSpace s(M, n);
    CHECK(super_transpose(Op::identity({s})) == Op::identity({s}));
    Op Q = build_Q<G>(s);
    Op P = build_P<G>(s);
    CHECK(Q == partial_super_transpose(P, "2"));
    CHECK(Q * Q == Q * G(M - 2 * n));
    CHECK(P * Q == Q);
    CHECK(Q * P == Q);
  }
  // With the frozen convention theta_i theta_conj(i) = (-1)^{[i]} cancels
  // s(i,j) s(conj j, conj i), so the supertranspose is an involution.
  for (auto [M, n] : kModels) {
    if (M + 2 * n > 5) continue;
    GradedSpace s(M, n);
    Op A = random_op({s}, rs, 0);
    CHECK(super_transpose(super_transpose(A)) == A);
    CHECK(super_transpose(A) != A);
  }
}

TEST_CASE("embedding") {
  GradedSpace s(1, 1);
  std::vector<GradedSpace> two{s, s}, three{s, s, s};
  Op P = build_P<G>(s);
  CHECK(embed(P, "1", "2", two, {"1", "2"}) == P);
  Op P12 = embed(P, "1", "2", three, {"1", "2", "3"});
  Op P23 = embed(P, "2", "3", three, {"1", "2", "3"});
  Op P13 = embed(P, "1", "3", three, {"1", "2", "3"});
  CHECK(P13 == P12 * P23 * P12);
  CHECK(embed(P, "3", "1", three, {"1", "2", "3"}) == P13);
  // Disjoint pairs commute on osp(1|2) with four factors.
  RationalSampler rs(4, 9);
  Op X = random_op({s, s}, rs, 3);
  Op Y = random_op({s, s}, rs, 3);
  // Only even operators commute as plain operators; project onto the even part.
  auto even = [&](const Op& o) {
    Op out(o.factors(), o.labels());
    const auto& mi = o.index();
    for (std::size_t i = 0; i < o.size(); ++i)
      for (const auto& [j, v] : o.row(i)) {
        int par = detail::parity_range(mi, o.factors(), i, 0, 2) + detail::parity_range(mi, o.factors(), j, 0, 2);
        if (par % 2 == 0) out.set(i, j, v);
      }
    return out;
  };
  std::vector<GradedSpace> four{s, s, s, s};
  std::vector<std::string> l4{"1", "2", "3", "4"};
  Op A = embed(even(X), "1", "2", four, l4);
  Op B = embed(even(Y), "3", "4", four, l4);
  CHECK(A * B == B * A);
  Op C = embed(even(Y), "2", "4", four, l4);
  Op D = embed(even(X), "1", "3", four, l4);
  CHECK(embed(P, "1", "3", four, l4) * embed(P, "2", "4", four, l4) ==
        embed(P, "2", "4", four, l4) * embed(P, "1", "3", four, l4));
  (void)C;
  (void)D;
  CHECK_THROWS_AS(embed(P, "1", "1", three, {"1", "2", "3"}), DomainError);
  CHECK_THROWS_AS(embed(P, "1", "9", three, {"1", "2", "3"}), DomainError);
}

TEST_CASE("reorder basis") {
  GradedSpace s(2, 1);
  RationalSampler rs(6, 9);
  Op A = random_op({s}, rs, 0);
  CHECK(reorder_basis(A, {{0, 1, 2, 3}}) == A);
  Op B = random_op({s, s}, rs, 2);
  std::vector<int> perm{3, 0, 2, 1};
  Op Br = reorder_basis(B, {perm, perm});
  CHECK(spectral_distance(spectrum(B), spectrum(Br)) < 1e-9);
  // Grade-preserving reorder maps P to the P of the relabeled space.
  std::vector<int> gp{1, 0, 3, 2};
  GradedSpace r = s.relabeled(gp);
  CHECK(reorder_basis(build_P<G>(s), {gp, gp}) == build_P<G>(r));
  CHECK(reorder_basis(build_Q<G>(s), {gp, gp}) == build_Q<G>(r));
  // Mixing grades also yields the relabeled P.
  CHECK(reorder_basis(build_P<G>(s), {perm, perm}) == build_P<G>(s.relabeled(perm)));
  CHECK_THROWS_AS(reorder_basis(A, {{0, 0, 1, 2}}), ValidationError);
}

TEST_CASE("operator json dump") {
  GradedSpace s(0, 1);
  auto j = build_P<G>(s).to_json();
  CHECK(j["factors"].size() == 2);
  CHECK(j["factors"][0]["M"] == 0);
  CHECK(j["entries"][0][0] == "-1");
  CHECK(j["entries"][1][2] == "-1");
  CHECK(j["entries"][1][1] == "0");
  CHECK(j["entries"].size() == 4);
}
