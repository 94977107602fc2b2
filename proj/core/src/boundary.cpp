#include "ospchain/boundary.hpp"

namespace ospchain {

namespace {

using G = GaussianRational;
using RF = RationalFunction;
using KOp = GradedOperator<RationalFunction>;

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void require_model(const BoundarySpec& s, int M, int n, const std::string& fam) {
  if (s.M != M || s.n != n) {
    throw ValidationError(fam + " requires (M,n) = (" + std::to_string(M) + "," + std::to_string(n) + ")");
  }
}

KOp diagonal(const GradedSpace& sp, const std::vector<RF>& d) {
  KOp k({sp}, {"1"});
  for (std::size_t i = 0; i < d.size(); ++i) k.set(i, i, d[i]);
  return k;
}

G parse_g(const Json& j, const char* key) {
  if (!j.contains(key)) throw ValidationError(std::string("missing boundary parameter '") + key + "'");
  const Json& v = j.at(key);
  if (v.is_number_integer()) return G(v.get<long>());
  if (v.is_string()) return G::parse(v.get<std::string>());
  throw ValidationError(std::string("boundary parameter '") + key + "' must be a string or integer");
}

}  // namespace

RF mobius(const G& c) {
  RF cu = RF::x() * RF(c);
  return (RF(1) + cu) / (RF(1) - cu);
}

G d2_partner(const ModelParams& p, const G& c1) {
  G den = (p.kappa - G(1)) * c1 + G(1);
  if (den.is_zero()) throw ValidationError("D2 partner c_M is infinite: (kappa-1) c1 + 1 = 0");
  return -c1 / den;
}

G d3_constant(const ModelParams& p, int m1, int n1) {
  G den = p.kappa - G(2 * m1 - 2 * n1 - 1);
  if (den.is_zero()) throw ValidationError("D3 constant c is infinite: kappa = 2 m1 - 2 n1 - 1");
  return G(2) / den;
}

std::vector<int> placement_D1(const ModelParams& p) {
  if (p.M % 2 != 0) throw ValidationError("D1 requires M even");
  std::vector<int> out;
  for (int i = 0; i < p.M / 2; ++i) out.push_back(i);
  for (int k = 0; k < p.n; ++k) out.push_back(p.M + k);
  return out;
}

std::string BoundarySpec::family_name() const {
  return std::visit(overloaded{
                        [](const family::Identity&) -> std::string { return "Identity"; },
                        [](const family::D1&) -> std::string { return "D1"; },
                        [](const family::D2&) -> std::string { return "D2"; },
                        [](const family::D3&) -> std::string { return "D3"; },
                        [](const family::D4&) -> std::string { return "D4"; },
                        [](const family::D4Infinite&) -> std::string { return "D4Infinite"; },
                        [](const family::D5&) -> std::string { return "D5"; },
                        [](const family::MixedOsp42so&) -> std::string { return "MixedOsp42so"; },
                        [](const family::MixedOsp42sp&) -> std::string { return "MixedOsp42sp"; },
                        [](const family::MixedOsp24so&) -> std::string { return "MixedOsp24so"; },
                        [](const family::MixedOsp24sp&) -> std::string { return "MixedOsp24sp"; },
                        [](const family::Custom& c) -> std::string { return "Custom:" + c.name; },
                    },
                    family);
}

void BoundarySpec::validate() const {
  if (M < 0 || n < 0 || M + 2 * n == 0) throw ValidationError("invalid (M,n)");
  const ModelParams p(M, n);
  std::visit(overloaded{
                 [](const family::Identity&) {},
                 [&](const family::D1&) {
                   if (M % 2 != 0) throw ValidationError("D1 requires M even (no extension to odd M)");
                 },
                 [&](const family::D2& d) {
                   if (M < 2) throw ValidationError("D2 requires M >= 2");
                   if (!d.cM_override) d2_partner(p, d.c1);
                 },
                 [&](const family::D3& d) {
                   if (d.m1 < 0 || d.m1 > M) throw ValidationError("D3 requires 0 <= m1 <= M");
                   if (d.n1 < 0 || d.n1 > n) throw ValidationError("D3 requires 0 <= n1 <= n");
                   // Once the bosonic set covers its conjugates the pattern only solves
                   // the reflection equation when it is the identity.
                   if (2 * d.m1 > M && d.n1 < n) throw ValidationError("D3 with m1 > floor(M/2) requires n1 = n");
                   d3_constant(p, d.m1, d.n1);
                 },
                 [&](const family::D4&) { require_model(*this, 4, 0, "D4"); },
                 [&](const family::D4Infinite&) { require_model(*this, 4, 0, "D4Infinite"); },
                 [&](const family::D5& d) {
                   require_model(*this, 2, 0, "D5");
                   if (d.k1.is_zero() || d.k2.is_zero()) throw ValidationError("D5 entries must be non-zero");
                 },
                 [&](const family::MixedOsp42so& m) {
                   require_model(*this, 4, 1, "MixedOsp42so");
                   if (m.k5 * m.k5 + m.l5 * m.l6 != G(1)) throw ValidationError("MixedOsp42so requires k5^2 + l5 l6 = 1");
                 },
                 [&](const family::MixedOsp42sp& m) {
                   require_model(*this, 4, 1, "MixedOsp42sp");
                   if (m.l2.is_zero()) throw ValidationError("MixedOsp42sp requires l2 != 0");
                 },
                 [&](const family::MixedOsp24so& m) {
                   require_model(*this, 2, 2, "MixedOsp24so");
                   if (m.k3 * m.k3 + m.l3 * m.l6 != G(1)) throw ValidationError("MixedOsp24so requires k3^2 + l3 l6 = 1");
                   if (m.k4 * m.k4 + m.l4 * m.l5 != G(1)) throw ValidationError("MixedOsp24so requires k4^2 + l4 l5 = 1");
                 },
                 [&](const family::MixedOsp24sp& m) {
                   require_model(*this, 2, 2, "MixedOsp24sp");
                   if (m.l1.is_zero()) throw ValidationError("MixedOsp24sp requires l1 != 0");
                 },
                 [&](const family::Custom& c) {
                   if (c.k.factors().size() != 1 || !(c.k.factors()[0] == GradedSpace(M, n))) {
                     throw ValidationError("custom K must act on one factor of the model space");
                   }
                 },
             },
             family);
}

KOp build_Kminus_formal(const BoundarySpec& spec) {
  spec.validate();
  const ModelParams p = spec.params();
  const GradedSpace& sp = p.space;
  const int d = sp.dim();
  return std::visit(
      overloaded{
          [&](const family::Identity&) { return KOp::identity({sp}, {"1"}); },
          [&](const family::D1& f) {
            std::vector<RF> diag(static_cast<std::size_t>(d), RF(1));
            RF k = mobius(f.c);
            for (int i : placement_D1(p)) diag[static_cast<std::size_t>(sp.conj(i))] = k;
            return diagonal(sp, diag);
          },
          [&](const family::D2& f) {
            std::vector<RF> diag(static_cast<std::size_t>(d), RF(1));
            G cM = f.cM_override ? *f.cM_override : d2_partner(p, f.c1);
            diag[0] = mobius(f.c1);
            diag[static_cast<std::size_t>(spec.M - 1)] = mobius(cM);
            return diagonal(sp, diag);
          },
          [&](const family::D3& f) {
            RF k = mobius(d3_constant(p, f.m1, f.n1));
            std::vector<RF> diag(static_cast<std::size_t>(d), k);
            auto mark = [&](int i) {
              diag[static_cast<std::size_t>(i)] = RF(1);
              diag[static_cast<std::size_t>(sp.conj(i))] = RF(1);
            };
            for (int i = 0; i < f.m1; ++i) mark(i);
            for (int k1 = 0; k1 < f.n1; ++k1) mark(spec.M + k1);
            return diagonal(sp, diag);
          },
          [&](const family::D4& f) {
            RF k2 = mobius(f.c2), k3 = mobius(f.c3);
            return diagonal(sp, {RF(1), k2, k3, k2 * k3});
          },
          [&](const family::D4Infinite&) { return diagonal(sp, {RF(1), RF(-1), RF(-1), RF(1)}); },
          [&](const family::D5& f) { return diagonal(sp, {f.k1, f.k2}); },
          [&](const family::MixedOsp42so& f) {
            KOp k = diagonal(sp, {RF(1), RF(1), RF(-1), RF(-1), RF(f.k5), RF(-f.k5)});
            k.set(4, 5, RF(f.l5));
            k.set(5, 4, RF(f.l6));
            return k;
          },
          [&](const family::MixedOsp42sp& f) {
            KOp k = diagonal(sp, {RF(1), RF(0), RF(0), RF(1), RF(1), RF(1)});
            k.set(1, 2, RF(f.l2));
            k.set(2, 1, RF(G(1) / f.l2));
            return k;
          },
          [&](const family::MixedOsp24so& f) {
            KOp k = diagonal(sp, {RF(1), RF(-1), RF(f.k3), RF(f.k4), RF(-f.k4), RF(-f.k3)});
            k.set(2, 5, RF(f.l3));
            k.set(3, 4, RF(f.l4));
            k.set(4, 3, RF(f.l5));
            k.set(5, 2, RF(f.l6));
            return k;
          },
          [&](const family::MixedOsp24sp& f) {
            KOp k = diagonal(sp, {RF(0), RF(0), RF(1), RF(-1), RF(-1), RF(1)});
            k.set(0, 1, RF(f.l1));
            k.set(1, 0, RF(G(1) / f.l1));
            return k;
          },
          [&](const family::Custom& f) { return f.k.with_labels({"1"}); },
      },
      spec.family);
}

KOp dual_Kplus_formal(const BoundarySpec& spec, SupertransposeConvention conv) {
  const ModelParams p = spec.params();
  KOp k = build_Kminus_formal(spec);
  KOp shifted = k.map<RF>([&](const RF& f) { return f.substitute_affine(G(-1), -p.kappa); });
  return super_transpose(shifted, conv);
}

RationalFunction rational_function_from_json(const Json& j) {
  auto coeffs = [](const Json& arr) {
    std::vector<G> c;
    for (const auto& e : arr) c.push_back(e.is_number_integer() ? G(e.get<long>()) : G::parse(e.get<std::string>()));
    return Polynomial(std::move(c));
  };
  if (j.is_string()) return RF(G::parse(j.get<std::string>()));
  if (j.is_number_integer()) return RF(G(j.get<long>()));
  if (j.is_object() && j.contains("num")) {
    Polynomial num = coeffs(j.at("num"));
    Polynomial den = j.contains("den") ? coeffs(j.at("den")) : Polynomial(1);
    if (den.is_zero()) throw ValidationError("rational function with zero denominator");
    return {num, den};
  }
  throw ValidationError("malformed rational function");
}

Json rational_function_to_json(const RationalFunction& f) {
  if (f.is_constant()) return f.constant_value().to_string();
  Json out;
  out["num"] = Json::array();
  for (const auto& c : f.numerator().coeffs()) out["num"].push_back(c.to_string());
  out["den"] = Json::array();
  for (const auto& c : f.denominator().coeffs()) out["den"].push_back(c.to_string());
  return out;
}

Json BoundarySpec::to_json() const {
  Json j;
  j["family"] = std::visit(overloaded{[](const family::Custom&) -> std::string { return "Custom"; },
                                      [&](const auto&) -> std::string { return family_name(); }},
                           family);
  std::visit(overloaded{
                 [](const family::Identity&) {},
                 [&](const family::D1& f) { j["c"] = f.c.to_string(); },
                 [&](const family::D2& f) {
                   j["c1"] = f.c1.to_string();
                   if (f.cM_override) j["cM_override"] = f.cM_override->to_string();
                 },
                 [&](const family::D3& f) {
                   j["m1"] = f.m1;
                   j["n1"] = f.n1;
                 },
                 [&](const family::D4& f) {
                   j["c2"] = f.c2.to_string();
                   j["c3"] = f.c3.to_string();
                 },
                 [](const family::D4Infinite&) {},
                 [&](const family::D5& f) {
                   j["k1"] = rational_function_to_json(f.k1);
                   j["k2"] = rational_function_to_json(f.k2);
                 },
                 [&](const family::MixedOsp42so& f) {
                   j["k5"] = f.k5.to_string();
                   j["l5"] = f.l5.to_string();
                   j["l6"] = f.l6.to_string();
                 },
                 [&](const family::MixedOsp42sp& f) { j["l2"] = f.l2.to_string(); },
                 [&](const family::MixedOsp24so& f) {
                   j["k3"] = f.k3.to_string();
                   j["k4"] = f.k4.to_string();
                   j["l3"] = f.l3.to_string();
                   j["l4"] = f.l4.to_string();
                   j["l5"] = f.l5.to_string();
                   j["l6"] = f.l6.to_string();
                 },
                 [&](const family::MixedOsp24sp& f) { j["l1"] = f.l1.to_string(); },
                 [&](const family::Custom& f) {
                   j["name"] = f.name;
                   Json rows = Json::array();
                   for (std::size_t i = 0; i < f.k.size(); ++i) {
                     Json row = Json::array();
                     for (std::size_t c = 0; c < f.k.size(); ++c) row.push_back(rational_function_to_json(f.k.get(i, c)));
                     rows.push_back(row);
                   }
                   j["entries"] = rows;
                 },
             },
             family);
  j["M"] = M;
  j["n"] = n;
  return j;
}

BoundarySpec BoundarySpec::from_json(const Json& j) {
  BoundarySpec s;
  if (!j.is_object()) throw ValidationError("boundary spec must be a JSON object");
  if (!j.contains("M") || !j.contains("n")) throw ValidationError("boundary spec needs M and n");
  s.M = j.at("M").get<int>();
  s.n = j.at("n").get<int>();
  const std::string fam = j.value("family", std::string("Identity"));
  if (fam == "Identity") {
    s.family = family::Identity{};
  } else if (fam == "D1") {
    s.family = family::D1{parse_g(j, "c")};
  } else if (fam == "D2") {
    family::D2 d{parse_g(j, "c1"), std::nullopt};
    if (j.contains("cM_override")) d.cM_override = parse_g(j, "cM_override");
    s.family = d;
  } else if (fam == "D3") {
    s.family = family::D3{j.value("m1", 0), j.value("n1", 0)};
  } else if (fam == "D4") {
    s.family = family::D4{parse_g(j, "c2"), parse_g(j, "c3")};
  } else if (fam == "D4Infinite") {
    s.family = family::D4Infinite{};
  } else if (fam == "D5") {
    if (!j.contains("k1") || !j.contains("k2")) throw ValidationError("D5 needs k1 and k2");
    s.family = family::D5{rational_function_from_json(j.at("k1")), rational_function_from_json(j.at("k2"))};
  } else if (fam == "MixedOsp42so") {
    s.family = family::MixedOsp42so{parse_g(j, "k5"), parse_g(j, "l5"), parse_g(j, "l6")};
  } else if (fam == "MixedOsp42sp") {
    s.family = family::MixedOsp42sp{parse_g(j, "l2")};
  } else if (fam == "MixedOsp24so") {
    s.family = family::MixedOsp24so{parse_g(j, "k3"), parse_g(j, "k4"), parse_g(j, "l3"),
                                    parse_g(j, "l4"), parse_g(j, "l5"), parse_g(j, "l6")};
  } else if (fam == "MixedOsp24sp") {
    s.family = family::MixedOsp24sp{parse_g(j, "l1")};
  } else if (fam == "Custom") {
    if (!j.contains("entries")) throw ValidationError("Custom boundary needs entries");
    GradedSpace sp(s.M, s.n);
    GradedOperator<RF> k({sp}, {"1"});
    const Json& rows = j.at("entries");
    if (rows.size() != static_cast<std::size_t>(sp.dim())) throw ValidationError("Custom entries have wrong size");
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (rows[r].size() != rows.size()) throw ValidationError("Custom entries have wrong size");
      for (std::size_t c = 0; c < rows.size(); ++c) k.set(r, c, rational_function_from_json(rows[r][c]));
    }
    s.family = family::Custom{k, j.value("name", std::string("custom"))};
  } else {
    throw ValidationError("unknown boundary family '" + fam + "'");
  }
  return s;
}

}  // namespace ospchain
