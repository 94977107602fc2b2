#include <cmath>
#include <numbers>

#include "doctest.h"
#include "ospchain/bethe.hpp"

using namespace ospchain;

namespace {

BetheConfiguration single(int levels, Complex root) {
  auto cfg = BetheConfiguration::empty(levels);
  cfg.roots[0] = {root};
  return cfg;
}

}  // namespace

TEST_CASE("e_factor examples") {
  CHECK(std::abs(e_factor(3.0, 0.0) + 1.0) < 1e-15);
  CHECK(std::abs(e_factor(-1.0, 0.0) + 1.0) < 1e-15);
  CHECK(std::abs(e_factor(0.0, Complex(0.7, 0.2)) - 1.0) < 1e-15);
  CHECK(std::abs(e_factor(1.0, 0.5) - Complex(0.0, 1.0)) < 1e-15);
  CHECK_THROWS_AS(e_factor(1.0, Complex(0.0, 0.5)), PoleError);
}

TEST_CASE("rank degenerations are rejected") {
  CHECK_THROWS_AS(bethe_residuals(EigenvalueModel(5, 1), 2, BetheConfiguration::empty(3)), DomainError);
  CHECK_THROWS_AS(bethe_residuals(EigenvalueModel(1, 2), 2, BetheConfiguration::empty(2)), DomainError);
  CHECK_THROWS_AS(solve_bethe(EigenvalueModel(1, 3), 2, {1, 0, 0}), DomainError);
}

TEST_CASE("residual examples on osp(5|4)") {
  EigenvalueModel model(5, 2);
  CHECK(bethe_residuals(model, 2, BetheConfiguration::empty(4)).empty());
  auto r = bethe_residuals(model, 2, single(4, 0.5));
  REQUIRE(r.size() == 1);
  CHECK(std::abs(r[0]) < 1e-14);
  auto r2 = bethe_residuals(model, 2, single(4, 0.25));
  CHECK(std::abs(r2[0]) > 1e-3);
}

TEST_CASE("equation families follow the level structure") {
  EigenvalueModel model(7, 3);  // m = 3, n = 3, levels 1..6
  auto e1 = bethe_equation(model, 2, 1);
  CHECK(e1.driving == 4);
  CHECK(e1.couplings.size() == 2);
  auto e2 = bethe_equation(model, 2, 2);
  CHECK(e2.driving == 0);
  CHECK(e2.couplings.size() == 3);
  CHECK(e2.couplings[0].x == 2.0);
  auto en = bethe_equation(model, 2, 3);
  CHECK(en.couplings.size() == 2);
  CHECK(en.couplings[0].x == 1.0);
  CHECK_FALSE(en.couplings[0].skip_self);
  CHECK(en.couplings[0].level == 4);
  auto e5 = bethe_equation(model, 2, 5);
  CHECK(e5.couplings[0].x == 2.0);
  auto top = bethe_equation(model, 2, 6);
  CHECK(top.couplings[0].x == 1.0);
  CHECK(top.couplings[0].skip_self);
  CHECK(top.couplings[1].level == 5);
}

TEST_CASE("analytic Jacobian agrees with finite differences") {
  EigenvalueModel model(5, 2);
  auto cfg = BetheConfiguration::empty(4);
  cfg.roots[0] = {Complex(0.4, 0.1), Complex(1.3, -0.05)};
  cfg.roots[1] = {Complex(0.8, 0.02)};
  cfg.roots[3] = {Complex(0.6, 0.0)};
  auto J = bethe_jacobian(model, 3, cfg);
  const double h = 1e-6;
  std::size_t col = 0;
  for (std::size_t l = 0; l < cfg.roots.size(); ++l) {
    for (std::size_t k = 0; k < cfg.roots[l].size(); ++k, ++col) {
      auto plus = cfg, minus = cfg;
      plus.roots[l][k] += h;
      minus.roots[l][k] -= h;
      auto rp = bethe_residuals(model, 3, plus), rm = bethe_residuals(model, 3, minus);
      for (std::size_t row = 0; row < rp.size(); ++row) {
        Complex fd = (rp[row] - rm[row]) / (2.0 * h);
        CHECK(std::abs(fd - J[row][col]) < 1e-6);
      }
    }
  }
}

TEST_CASE("single-root sector matches the cotangent family") {
  EigenvalueModel model(5, 2);
  for (int L : {2, 3, 4}) {
    auto res = solve_bethe(model, L, {1, 0, 0, 0});
    std::vector<double> expect;
    for (int k = 1; k < 2 * L; ++k) {
      double v = 0.5 / std::tan(k * std::numbers::pi / (2.0 * L));
      if (v > 1e-6) expect.push_back(v);
    }
    CAPTURE(L);
    REQUIRE(res.solutions.size() == expect.size());
    for (const auto& s : res.solutions) {
      Complex z = s.config.roots[0][0];
      double best = 1e300;
      for (double v : expect) best = std::min(best, std::abs(z - v));
      CHECK(best < 1e-12);
      CHECK(s.max_residual < 1e-12);
    }
  }
}

TEST_CASE("solver output satisfies the equations and their sign symmetry") {
  EigenvalueModel model(5, 2);
  for (const std::vector<int>& occ : {std::vector<int>{1, 1, 0, 0}, std::vector<int>{2, 0, 0, 0},
                                      std::vector<int>{1, 1, 1, 0}, std::vector<int>{1, 0, 0, 1}}) {
    auto res = solve_bethe(model, 2, occ);
    CAPTURE(res.to_json().dump());
    for (const auto& s : res.solutions) {
      CHECK(max_abs(bethe_residuals(model, 2, s.config)) < 1e-12);
      for (std::size_t l = 0; l < s.config.roots.size(); ++l) {
        for (std::size_t k = 0; k < s.config.roots[l].size(); ++k) {
          auto flipped = s.config;
          flipped.roots[l][k] = -flipped.roots[l][k];
          CHECK(max_abs(bethe_residuals(model, 2, flipped)) < 1e-12);
        }
      }
    }
  }
}

TEST_CASE("empty occupancy, determinism and deduplication") {
  EigenvalueModel model(5, 2);
  auto empty = solve_bethe(model, 2, {0, 0, 0, 0});
  REQUIRE(empty.solutions.size() == 1);
  CHECK(empty.solutions[0].config.total() == 0);
  SolverOptions opt;
  opt.seed = 7;
  auto a = solve_bethe(model, 2, {1, 1, 0, 0}, opt);
  auto b = solve_bethe(model, 2, {1, 1, 0, 0}, opt);
  CHECK(a.to_json().dump() == b.to_json().dump());
  auto one = solve_bethe(model, 2, {1, 0, 0, 0}, opt);
  int dups = 0;
  for (const auto& o : one.outcomes) dups += o.status == "duplicate" ? 1 : 0;
  CHECK(dups > 0);
  CHECK(one.solutions.size() == 1);
}

TEST_CASE("occupancy contract") {
  EigenvalueModel model(5, 2);
  CHECK_THROWS_AS(solve_bethe(model, 2, {2, 2, 1, 0}), ValidationError);
  CHECK_THROWS_AS(solve_bethe(model, 2, {1, 0}), ValidationError);
  CHECK_THROWS_AS(solve_bethe(model, 2, {-1, 0, 0, 0}), ValidationError);
}

TEST_CASE("solved level-1 roots pass the residue check") {
  EigenvalueModel model(5, 2);
  auto conv = SpectralConvention::frozen(model);
  auto worst = [](const CheckReport& rep) {
    double w = 0.0;
    for (const auto& s : rep.samples) w = std::max(w, std::stod(s["residue_abs"].get<std::string>()));
    return w;
  };
  for (int L : {2, 3}) {
    auto res = solve_bethe(model, L, {1, 0, 0, 0});
    REQUIRE_FALSE(res.solutions.empty());
    for (const auto& s : res.solutions) {
      auto rep = residue_check(model, L, s.config, 1e-8, conv);
      CAPTURE(rep.to_json().dump());
      CHECK(rep.pass);
      auto perturbed = s.config;
      perturbed.roots[0][0] += 0.1;
      auto bad = residue_check(model, L, perturbed, 1e-3, conv);
      if (L == 2) CHECK_FALSE(bad.pass);
      CHECK(worst(bad) > 1e4 * std::max(worst(rep), 1e-16));
    }
  }
}
