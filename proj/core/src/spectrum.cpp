#include "ospchain/spectrum.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <algorithm>
#include <cmath>
#include <numbers>

namespace ospchain {

namespace {

using G = GaussianRational;

std::string order_name(const EigenvalueModel& model, const std::vector<int>& order) {
  const int D = model.M() + 2 * model.n;
  bool identity = true;
  for (int k = 0; k < D; ++k) identity = identity && order[static_cast<std::size_t>(k)] == k;
  if (identity) return "identity";
  if (order == SpectralConvention::frozen(model).order) return "fermion-split";
  std::string s;
  for (int v : order) s += (s.empty() ? "" : ",") + std::to_string(v);
  return s;
}

std::vector<int> fermion_split_order(const EigenvalueModel& model) {
  const int M = model.M();
  std::vector<int> order;
  for (int k = 0; k < model.n; ++k) order.push_back(M + k);
  for (int k = 0; k < M; ++k) order.push_back(k);
  for (int k = model.n; k < 2 * model.n; ++k) order.push_back(M + k);
  return order;
}

std::vector<int> identity_order(const EigenvalueModel& model) {
  std::vector<int> order(static_cast<std::size_t>(model.M() + 2 * model.n));
  for (std::size_t k = 0; k < order.size(); ++k) order[k] = static_cast<int>(k);
  return order;
}

Complex to_c(const G& z) { return ScalarTraits<Complex>::from(z); }

Eigen::MatrixXcd dense(const GradedOperator<Complex>& a) {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(a.size()), static_cast<Eigen::Index>(a.size()));
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (const auto& [j, v] : a.row(i)) m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = v;
  }
  return m;
}

/// Exact and float transfer data for one (model, L, lambda) sample.
struct VacuumSample {
  G lambda;
  GradedOperator<G> t;
  std::vector<Complex> eigs;
};

VacuumSample compute_sample(const EigenvalueModel& model, int L, const G& lambda) {
  auto cfg = pseudovacuum_chain(model, L);
  VacuumSample s{lambda, open_transfer<G>(cfg, lambda), {}};
  s.eigs = eigenvalues(open_transfer<Complex>(cfg, to_c(lambda)));
  return s;
}

Json judge(const EigenvalueModel& model, int L, const VacuumSample& s, const SpectralConvention& conv, double eig_tol,
           bool* pass) {
  Json rec;
  rec["lambda"] = s.lambda.to_string();
  auto cfg = pseudovacuum_chain(model, L);
  const std::size_t v = pseudovacuum_index(cfg, conv.vacuum);
  bool proportional = true;
  for (std::size_t i = 0; i < s.t.size(); ++i) {
    if (i != v && !s.t.get(i, v).is_zero()) {
      proportional = false;
      break;
    }
  }
  G factor = s.t.get(v, v);
  rec["proportional"] = proportional;
  rec["eigenvalue"] = factor.to_string();
  bool ok = proportional;
  try {
    G l0 = lambda0<G>(model, L, s.lambda, conv);
    bool equal = l0 == factor;
    Complex lz = to_c(l0);
    double rel = nearest_distance(s.eigs, lz) / std::max(std::abs(lz), 1e-300);
    bool eig_ok = rel <= eig_tol;
    rec["lambda0"] = l0.to_string();
    rec["factor_matches"] = equal;
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", rel);
    rec["eigen_match_relative"] = buf;
    rec["eigen_match"] = eig_ok;
    ok = ok && equal && eig_ok;
  } catch (const PoleError& e) {
    rec["lambda0"] = std::string("pole: ") + e.point();
    ok = false;
  }
  rec["pass"] = ok;
  *pass = ok;
  return rec;
}

}  // namespace

EigenvalueModel::EigenvalueModel(int M, int n_) : m((M - 1) / 2), n(n_) {
  if (M < 1 || M % 2 == 0) throw DomainError("eigenvalue formulas are only available for odd M (M = 2m+1)");
  if (n_ < 0) throw ValidationError("n must be non-negative");
  params = ModelParams(M, n_);
}

std::string SpectralConvention::id() const {
  std::string s = name;
  if (!flipped.empty()) {
    s += ";flipped:";
    for (std::size_t k = 0; k < flipped.size(); ++k) s += (k ? "," : "") + std::to_string(flipped[k]);
  }
  return s;
}

Json SpectralConvention::to_json() const {
  Json j;
  j["id"] = id();
  j["shift"] = eta_sign > 0 ? "+i" : "-i";
  j["vacuum"] = vacuum;
  j["order"] = order;
  j["sign"] = sign_mode == SignMode::kMiddleGrade ? "middle-grade" : "level-grade";
  if (!flipped.empty()) j["flipped"] = flipped;
  return j;
}

SpectralConvention SpectralConvention::literal(const EigenvalueModel& model) {
  SpectralConvention c;
  c.eta_sign = 1;
  c.vacuum = 0;
  c.order = identity_order(model);
  c.sign_mode = SignMode::kMiddleGrade;
  c.name = "order:identity;vacuum:e1;shift:+i;sign:middle-grade";
  return c;
}

SpectralConvention SpectralConvention::frozen(const EigenvalueModel& model) {
  SpectralConvention c;
  c.eta_sign = -1;
  c.order = fermion_split_order(model);
  c.vacuum = c.order.front();
  c.sign_mode = SignMode::kLevelGrade;
  c.name = "order:fermion-split;vacuum:first-fermion;shift:-i;sign:level-grade";
  return c;
}

SpectralConvention SpectralConvention::with_flipped(int level) const {
  SpectralConvention c = *this;
  c.flipped.push_back(level);
  return c;
}

int SpectralConvention::term_sign(const EigenvalueModel& model, int l) const {
  const GradedSpace& sp = model.params.space;
  int s = 1;
  int g = sp.grade(order.at(static_cast<std::size_t>(l)));
  if (sign_mode == SignMode::kLevelGrade) {
    s = g ? -1 : 1;
  } else if (l != 0 && l != model.max_level()) {
    s = g ? -1 : 1;
  }
  for (int f : flipped) {
    if (f == l) s = -s;
  }
  return s;
}

ChainConfig pseudovacuum_chain(const EigenvalueModel& model, int L) {
  const ModelParams& p = model.params;
  BoundarySpec id{p.M, p.n, family::Identity{}};
  return ChainConfig::open_chain(p, L, id, id, Normalization::kPolynomial);
}

std::size_t pseudovacuum_index(const ChainConfig& cfg, int vacuum) {
  std::size_t idx = 0;
  for (int k = 0; k < cfg.L; ++k) idx = idx * static_cast<std::size_t>(cfg.params.dim()) + static_cast<std::size_t>(vacuum);
  return idx;
}

CheckReport verify_pseudovacuum(const EigenvalueModel& model, int L, const std::vector<G>& samples,
                                const SpectralConvention& conv, double eig_tol) {
  CheckReport rep;
  rep.check = "pseudovacuum";
  rep.M = model.M();
  rep.n = model.n;
  rep.extra["L"] = L;
  rep.extra["convention"] = conv.to_json();
  for (const auto& lam : samples) {
    try {
      auto s = compute_sample(model, L, lam);
      bool ok = false;
      rep.samples.push_back(judge(model, L, s, conv, eig_tol, &ok));
      rep.pass = rep.pass && ok;
    } catch (const PoleError& e) {
      Json rec;
      rec["lambda"] = lam.to_string();
      rec["skipped"] = std::string("pole: ") + e.point();
      ++rep.skipped;
      rep.samples.push_back(rec);
    }
  }
  if (rep.samples.size() == rep.skipped) rep.pass = false;
  return rep;
}

CheckReport check_vacuum_eigenstate(const EigenvalueModel& model, int L, const BoundarySpec& kminus,
                                    const std::vector<G>& samples, const SpectralConvention& conv) {
  CheckReport rep;
  rep.check = "vacuum-eigenstate";
  rep.M = model.M();
  rep.n = model.n;
  rep.extra["L"] = L;
  rep.extra["kminus"] = kminus.to_json();
  auto cfg = ChainConfig::open_chain(model.params, L, kminus, kminus, Normalization::kPolynomial);
  const std::size_t v = pseudovacuum_index(cfg, conv.vacuum);
  for (const auto& lam : samples) {
    Json rec;
    rec["lambda"] = lam.to_string();
    try {
      auto t = open_transfer<G>(cfg, lam);
      bool ok = true;
      for (std::size_t i = 0; i < t.size(); ++i) ok = ok && (i == v || t.get(i, v).is_zero());
      rec["eigenvalue"] = t.get(v, v).to_string();
      rec["pass"] = ok;
      rep.pass = rep.pass && ok;
    } catch (const PoleError& e) {
      rec["skipped"] = std::string("pole: ") + e.point();
      ++rep.skipped;
    }
    rep.samples.push_back(rec);
  }
  if (rep.samples.size() == rep.skipped) rep.pass = false;
  return rep;
}

std::vector<SpectralConvention> candidate_spectral_conventions(const EigenvalueModel& model) {
  std::vector<SpectralConvention> out;
  for (const auto& order : {identity_order(model), fermion_split_order(model)}) {
    for (int vacuum : {0, model.M()}) {
      if (vacuum >= model.M() + 2 * model.n) continue;
      for (int eta : {1, -1}) {
        for (auto mode : {SpectralConvention::SignMode::kMiddleGrade, SpectralConvention::SignMode::kLevelGrade}) {
          SpectralConvention c;
          c.order = order;
          c.vacuum = vacuum;
          c.eta_sign = eta;
          c.sign_mode = mode;
          c.name = "order:" + order_name(model, order) + ";vacuum:" + (vacuum == 0 ? "e1" : "first-fermion") +
                   ";shift:" + (eta > 0 ? "+i" : "-i") +
                   ";sign:" + (mode == SpectralConvention::SignMode::kMiddleGrade ? "middle-grade" : "level-grade");
          out.push_back(c);
        }
      }
    }
  }
  return out;
}

SpectralSelection select_spectral_convention() {
  SpectralSelection sel;
  const std::vector<G> lambdas{G(1, 3), G(-2, 5), G(3, 7)};
  std::vector<std::pair<EigenvalueModel, std::vector<std::pair<int, std::vector<VacuumSample>>>>> data;
  for (auto [M, n] : std::vector<std::pair<int, int>>{{1, 1}, {3, 1}}) {
    EigenvalueModel model(M, n);
    std::vector<std::pair<int, std::vector<VacuumSample>>> per_L;
    for (int L : {1, 2}) {
      std::vector<VacuumSample> ss;
      for (const auto& lam : lambdas) ss.push_back(compute_sample(model, L, lam));
      per_L.emplace_back(L, std::move(ss));
    }
    data.emplace_back(model, std::move(per_L));
  }
  const std::size_t count = candidate_spectral_conventions(data.front().first).size();
  for (std::size_t c = 0; c < count; ++c) {
    bool all = true;
    std::string name;
    for (const auto& [model, per_L] : data) {
      auto conv = candidate_spectral_conventions(model)[c];
      name = conv.name;
      for (const auto& [L, ss] : per_L) {
        for (const auto& s : ss) {
          bool ok = false;
          judge(model, L, s, conv, 1e-8, &ok);
          all = all && ok;
        }
      }
    }
    Json trial;
    trial["convention"] = name;
    trial["pass"] = all;
    sel.trials.push_back(trial);
    if (all && !sel.selected) sel.selected = name;
  }
  return sel;
}

std::vector<std::vector<Complex>> roots_as_complex(const BetheConfiguration& cfg) { return cfg.roots; }

std::vector<Complex> dressing_poles(const EigenvalueModel& model, const BetheConfiguration& roots,
                                    const SpectralConvention& conv) {
  const Complex eta(0.0, conv.eta_sign > 0 ? 1.0 : -1.0);
  std::vector<Complex> poles;
  auto add = [&](Complex z) {
    for (const auto& p : poles) {
      if (std::abs(p - z) < 1e-9) return;
    }
    poles.push_back(z);
  };
  for (int l = 0; l <= model.n - 1; ++l) {
    if (l == 0) {
      if (roots.levels() >= 1) {
        for (auto r : roots.level(1)) {
          add(-r - eta / 2.0);
          add(r - eta / 2.0);
        }
      }
      continue;
    }
    const Complex shift = eta * (static_cast<double>(l) / 2.0);
    if (l <= roots.levels()) {
      for (auto r : roots.level(l)) {
        add(-r - shift);
        add(r - shift);
      }
    }
    if (l + 1 <= roots.levels()) {
      for (auto r : roots.level(l + 1)) {
        add(-r - shift - eta / 2.0);
        add(r - shift - eta / 2.0);
      }
    }
  }
  return poles;
}

CheckReport residue_check(const EigenvalueModel& model, int L, const BetheConfiguration& roots, double tol,
                          const SpectralConvention& conv, double radius, int points) {
  CheckReport rep;
  rep.check = "residue";
  rep.M = model.M();
  rep.n = model.n;
  rep.extra["L"] = L;
  rep.extra["roots"] = roots.to_json();
  rep.extra["radius"] = radius;
  rep.extra["points"] = points;
  const auto rl = roots_as_complex(roots);
  for (const auto& p : dressing_poles(model, roots, conv)) {
    Complex acc = 0.0;
    for (int k = 0; k < points; ++k) {
      double th = 2.0 * std::numbers::pi * (static_cast<double>(k) + 0.5) / points;
      Complex e = std::polar(1.0, th);
      acc += dressed_eigenvalue<Complex>(model, L, p + radius * e, rl, conv) * e;
    }
    Complex res = acc * (radius / points);
    Json rec;
    rec["pole"] = {p.real(), p.imag()};
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", std::abs(res));
    rec["residue_abs"] = buf;
    bool ok = std::abs(res) < tol;
    rec["pass"] = ok;
    rep.pass = rep.pass && ok;
    rep.samples.push_back(rec);
  }
  return rep;
}

std::vector<Complex> eigenvalues(const GradedOperator<Complex>& a) {
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(dense(a), false);
  const auto& ev = es.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

double nearest_distance(const std::vector<Complex>& eigs, Complex z) {
  double best = std::numeric_limits<double>::infinity();
  for (auto e : eigs) best = std::min(best, std::abs(e - z));
  return best;
}

double shared_eigenspace_residual(const GradedOperator<Complex>& a, const GradedOperator<Complex>& b,
                                  double cluster_tol) {
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(dense(a), true);
  const auto& ev = es.eigenvalues();
  const Eigen::MatrixXcd& vecs = es.eigenvectors();
  const Eigen::MatrixXcd B = dense(b);
  const Eigen::Index n = ev.size();
  std::vector<bool> used(static_cast<std::size_t>(n), false);
  double worst = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (used[static_cast<std::size_t>(i)]) continue;
    std::vector<Eigen::Index> cluster;
    for (Eigen::Index j = i; j < n; ++j) {
      if (!used[static_cast<std::size_t>(j)] && std::abs(ev(j) - ev(i)) < cluster_tol * std::max(1.0, std::abs(ev(i)))) {
        used[static_cast<std::size_t>(j)] = true;
        cluster.push_back(j);
      }
    }
    Eigen::MatrixXcd V(n, static_cast<Eigen::Index>(cluster.size()));
    for (std::size_t k = 0; k < cluster.size(); ++k) V.col(static_cast<Eigen::Index>(k)) = vecs.col(cluster[k]);
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(V);
    Eigen::MatrixXcd Q = qr.householderQ() * Eigen::MatrixXcd::Identity(n, V.cols());
    Eigen::MatrixXcd BQ = B * Q;
    Eigen::MatrixXcd R = BQ - Q * (Q.adjoint() * BQ);
    worst = std::max(worst, R.norm());
  }
  return worst;
}

}  // namespace ospchain
