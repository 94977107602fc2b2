#pragma once

#include <string>
#include <vector>

#include "ospchain/boundary.hpp"

namespace ospchain {

enum class Normalization { kRational, kPolynomial };

/// Homogeneous chain of L sites. For open chains `kminus` is K- and
/// `kplus_source` is the reflection-equation solution whose dual is K+.
struct ChainConfig {
  ModelParams params;
  int L = 1;
  Normalization normalization = Normalization::kRational;
  bool open = false;
  BoundarySpec kminus;
  BoundarySpec kplus_source;
  std::size_t dimension_cap = 4096;

  static ChainConfig closed(const ModelParams& p, int L, Normalization norm = Normalization::kRational);
  static ChainConfig open_chain(const ModelParams& p, int L, BoundarySpec kminus, BoundarySpec kplus_source,
                                Normalization norm = Normalization::kRational);

  /// Throws DomainError/ValidationError when the chain is out of range.
  void validate() const;
  std::size_t full_dimension() const;
  std::vector<GradedSpace> aux_chain() const;
  std::vector<std::string> aux_labels() const;
  std::vector<GradedSpace> quantum_chain() const;
  std::vector<std::string> quantum_labels() const;
  Json to_json() const;
};

namespace detail {

template <class S>
GradedOperator<S> chain_R(const ChainConfig& cfg, const S& x) {
  return cfg.normalization == Normalization::kRational ? build_R<S>(cfg.params, x)
                                                       : build_R_normalized<S>(cfg.params, x);
}

/// The rational spectral parameter u belonging to x (u = -i lambda for the polynomial form).
template <class S>
S boundary_argument(const ChainConfig& cfg, const S& x) {
  if (cfg.normalization == Normalization::kRational) return x;
  return -ScalarTraits<S>::i() * x;
}

}  // namespace detail

/// T_a(x) = R_aL(x) ... R_a1(x) on a (x) 1 (x) ... (x) L.
template <class S>
GradedOperator<S> monodromy_T(const ChainConfig& cfg, const S& x) {
  cfg.validate();
  auto chain = cfg.aux_chain();
  auto labels = cfg.aux_labels();
  auto R = detail::chain_R<S>(cfg, x);
  auto T = embed(R, "a", "1", chain, labels);
  for (int k = 2; k <= cfg.L; ++k) T = embed(R, "a", std::to_string(k), chain, labels) * T;
  return T;
}

/// T^_a(x) = R_1a(x) ... R_La(x).
template <class S>
GradedOperator<S> monodromy_hatT(const ChainConfig& cfg, const S& x) {
  cfg.validate();
  auto chain = cfg.aux_chain();
  auto labels = cfg.aux_labels();
  auto R = detail::chain_R<S>(cfg, x);
  auto T = embed(R, "1", "a", chain, labels);
  for (int k = 2; k <= cfg.L; ++k) T = T * embed(R, std::to_string(k), "a", chain, labels);
  return T;
}

template <class S>
GradedOperator<S> closed_transfer(const ChainConfig& cfg, const S& x) {
  return partial_super_trace(monodromy_T<S>(cfg, x), "a");
}

/// t(x) = str_a K+_a(x) T_a(x) K-_a(x) T^_a(x).
template <class S>
GradedOperator<S> open_transfer(const ChainConfig& cfg, const S& x) {
  cfg.validate();
  auto chain = cfg.aux_chain();
  auto labels = cfg.aux_labels();
  S u = detail::boundary_argument<S>(cfg, x);
  auto km = embed_one(evaluate<S>(build_Kminus_formal(cfg.kminus), u), "a", chain, labels);
  auto kp = embed_one(evaluate<S>(dual_Kplus_formal(cfg.kplus_source), u), "a", chain, labels);
  auto left = kp * monodromy_T<S>(cfg, x) * km;
  return partial_super_trace_of_product(left, monodromy_hatT<S>(cfg, x), "a");
}

template <class S>
GradedOperator<S> transfer(const ChainConfig& cfg, const S& x) {
  return cfg.open ? open_transfer<S>(cfg, x) : closed_transfer<S>(cfg, x);
}

/// [t(u), t(v)] per sample: exact zero for exact scalars, relative
/// tolerance ||[t(u),t(v)]|| / (||t(u)|| ||t(v)||) for floats.
template <class S>
CheckReport check_commutativity(const ChainConfig& cfg, const std::vector<std::pair<S, S>>& samples,
                                double tol = 1e-10) {
  CheckReport rep;
  rep.check = "commute";
  rep.M = cfg.params.M;
  rep.n = cfg.params.n;
  rep.extra["chain"] = cfg.to_json();
  for (const auto& [u, v] : samples) {
    Json rec;
    rec["u"] = ScalarTraits<S>::render(u);
    rec["v"] = ScalarTraits<S>::render(v);
    try {
      auto tu = transfer<S>(cfg, u);
      auto tv = transfer<S>(cfg, v);
      auto c = commutator(tu, tv);
      bool ok;
      if constexpr (ScalarTraits<S>::exact) {
        ok = c.is_zero();
        rec["commutator_max"] = detail::residual_string(c);
      } else {
        double scale = std::max(1e-300, tu.max_magnitude() * tv.max_magnitude());
        double rel = c.max_magnitude() / scale;
        ok = rel <= tol;
        rec["commutator_max"] = render_magnitude(Complex(c.max_magnitude(), 0.0));
        rec["relative"] = render_magnitude(Complex(rel, 0.0));
      }
      rec["trivial"] = tu.is_zero();
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

}  // namespace ospchain
