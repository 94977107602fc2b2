#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "ospchain/rmatrix.hpp"

namespace ospchain {

namespace family {

struct Identity {};
/// k_i = 1, k_conj(i) = (1+cu)/(1-cu) for i in the placement index set; M even.
struct D1 {
  GaussianRational c;
};
/// k_1 = f(c1), k_M = f(cM), k_j = 1 otherwise, with (kappa-1) c1 cM + c1 + cM = 0.
struct D2 {
  GaussianRational c1;
  std::optional<GaussianRational> cM_override;  // bypasses the constraint (negative controls)
};
struct D3 {
  int m1 = 0;
  int n1 = 0;
};
/// so(4) only: diag(1, f(c2), f(c3), f(c2) f(c3)).
struct D4 {
  GaussianRational c2;
  GaussianRational c3;
};
/// so(4) c2 = c3 = infinity pattern diag(1,-1,-1,1).
struct D4Infinite {};
/// so(2): any diagonal diag(k1(u), k2(u)).
struct D5 {
  RationalFunction k1;
  RationalFunction k2;
};
struct MixedOsp42so {
  GaussianRational k5, l5, l6;
};
struct MixedOsp42sp {
  GaussianRational l2;
};
struct MixedOsp24so {
  GaussianRational k3, k4, l3, l4, l5, l6;
};
struct MixedOsp24sp {
  GaussianRational l1;
};
/// User-supplied K(u) as a matrix of rational functions of u.
struct Custom {
  GradedOperator<RationalFunction> k;
  std::string name = "custom";
};

}  // namespace family

using FamilyVariant = std::variant<family::Identity, family::D1, family::D2, family::D3, family::D4, family::D4Infinite,
                                   family::D5, family::MixedOsp42so, family::MixedOsp42sp, family::MixedOsp24so,
                                   family::MixedOsp24sp, family::Custom>;

struct BoundarySpec {
  int M = 0;
  int n = 0;
  FamilyVariant family;

  ModelParams params() const { return {M, n}; }
  std::string family_name() const;

  /// Throws ValidationError naming the violated relation.
  void validate() const;

  Json to_json() const;
  static BoundarySpec from_json(const Json& j);
};

/// f_c(u) = (1 + c u) / (1 - c u).
RationalFunction mobius(const GaussianRational& c);

/// D2 partner cM = -c1 / ((kappa-1) c1 + 1).
GaussianRational d2_partner(const ModelParams& p, const GaussianRational& c1);
/// D3 constant c = 2 / (kappa - (2 m1 - 2 n1 - 1)).
GaussianRational d3_constant(const ModelParams& p, int m1, int n1);

/// 0-based indices i whose conjugates carry the non-trivial D1 entry.
std::vector<int> placement_D1(const ModelParams& p);

/// K-(u) with formal u (validated first).
GradedOperator<RationalFunction> build_Kminus_formal(const BoundarySpec& spec);
/// K+(u) = supertranspose(K~(-u - kappa)), formal in u.
GradedOperator<RationalFunction> dual_Kplus_formal(const BoundarySpec& spec,
                                                   SupertransposeConvention conv = kFrozenConvention);

/// Entry-wise evaluation of a formal single-site operator.
template <class S>
GradedOperator<S> evaluate(const GradedOperator<RationalFunction>& k, const S& u) {
  return k.map<S>([&](const RationalFunction& f) {
    if constexpr (std::is_same_v<S, GaussianRational>) {
      return f.eval(u);
    } else if constexpr (std::is_same_v<S, RationalFunction>) {
      return f.compose(u);
    } else {
      Complex d = f.denominator().eval(u);
      if (d == Complex(0.0, 0.0)) throw PoleError(ScalarTraits<S>::render(u));
      return f.eval(u);
    }
  });
}

template <class S>
GradedOperator<S> build_Kminus(const BoundarySpec& spec, const S& u) {
  return evaluate<S>(build_Kminus_formal(spec), u);
}

template <class S>
GradedOperator<S> dual_Kplus(const BoundarySpec& spec, const S& u) {
  return evaluate<S>(dual_Kplus_formal(spec), u);
}

/// R_ab(ua-ub) K_a(ua) R_ba(ua+ub) K_b(ub) = K_b(ub) R_ab(ua+ub) K_a(ua) R_ba(ua-ub),
/// with K given formally (so that deliberately broken matrices can be tested).
template <class S>
CheckReport check_reflection_formal(const ModelParams& p, const GradedOperator<RationalFunction>& k,
                                    const std::vector<std::pair<S, S>>& samples, double tol = 1e-10) {
  CheckReport rep;
  rep.check = "reflection";
  rep.M = p.M;
  rep.n = p.n;
  const std::vector<GradedSpace> chain{p.space, p.space};
  const std::vector<std::string> labels{"a", "b"};
  for (const auto& [ua, ub] : samples) {
    Json rec;
    rec["u_a"] = ScalarTraits<S>::render(ua);
    rec["u_b"] = ScalarTraits<S>::render(ub);
    try {
      auto Ka = embed_one(evaluate<S>(k, ua), "a", chain, labels);
      auto Kb = embed_one(evaluate<S>(k, ub), "b", chain, labels);
      auto Rm = build_R<S>(p, ua - ub);
      auto Rp = build_R<S>(p, ua + ub);
      auto Rab_m = embed(Rm, "a", "b", chain, labels);
      auto Rab_p = embed(Rp, "a", "b", chain, labels);
      auto Rba_m = embed(Rm, "b", "a", chain, labels);
      auto Rba_p = embed(Rp, "b", "a", chain, labels);
      auto residual = Rab_m * Ka * Rba_p * Kb - Kb * Rab_p * Ka * Rba_m;
      bool ok = detail::residual_passes(residual, tol);
      rec["residual_max"] = detail::residual_string(residual);
      rec["pass"] = ok;
      rep.pass = rep.pass && ok;
    } catch (const PoleError& e) {
      rec["skipped"] = std::string("pole: ") + e.point();
      ++rep.skipped;
    }
    rep.samples.push_back(std::move(rec));
  }
  if (rep.samples.size() == rep.skipped) rep.pass = false;
  return rep;
}

template <class S>
CheckReport check_reflection(const BoundarySpec& spec, const std::vector<std::pair<S, S>>& samples,
                             double tol = 1e-10) {
  auto rep = check_reflection_formal<S>(spec.params(), build_Kminus_formal(spec), samples, tol);
  rep.extra["boundary"] = spec.to_json();
  return rep;
}

/// JSON helpers for rational functions: a scalar string or {"num":[..],"den":[..]}
/// with coefficients listed from the constant term up.
RationalFunction rational_function_from_json(const Json& j);
Json rational_function_to_json(const RationalFunction& f);

}  // namespace ospchain
