#include "run.hpp"

#include <CLI11.hpp>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "ospchain/bethe.hpp"
#include "ospchain/boundary.hpp"
#include "ospchain/rmatrix.hpp"
#include "ospchain/sampling.hpp"
#include "ospchain/spectrum.hpp"
#include "ospchain/transfer.hpp"

#ifndef OSPCHAIN_VERSION
#define OSPCHAIN_VERSION "0.0.0"
#endif

namespace ospchain::cli {

namespace {

using G = GaussianRational;

constexpr const char* kBoundaryKeys[] = {"c",  "c1", "cM_override", "m1", "n1", "c2", "c3", "k1", "k2",
                                         "k3", "k4", "k5", "l1", "l2", "l3", "l4", "l5", "l6"};

std::vector<std::pair<Complex, Complex>> to_float(const std::vector<std::pair<G, G>>& v) {
  std::vector<std::pair<Complex, Complex>> out;
  for (const auto& [a, b] : v) out.emplace_back(ScalarTraits<Complex>::from(a), ScalarTraits<Complex>::from(b));
  return out;
}

std::vector<Complex> to_float(const std::vector<G>& v) {
  std::vector<Complex> out;
  for (const auto& a : v) out.push_back(ScalarTraits<Complex>::from(a));
  return out;
}

Json sample_strings(const std::vector<std::pair<G, G>>& v) {
  Json out = Json::array();
  for (const auto& [a, b] : v) out.push_back({a.to_string(), b.to_string()});
  return out;
}

Json sample_strings(const std::vector<G>& v) {
  Json out = Json::array();
  for (const auto& a : v) out.push_back(a.to_string());
  return out;
}

BoundarySpec boundary_of(const RunConfig& c) {
  Json j = c.boundary.value_or(Json{{"family", "Identity"}});
  j["M"] = c.M;
  j["n"] = c.n;
  BoundarySpec spec = BoundarySpec::from_json(j);
  spec.validate();
  return spec;
}

Json conventions(const RunConfig& c) {
  Json j;
  j["supertranspose"] = kFrozenConvention.id();
  j["koszul"] = "sign:(-1)^{|K|(|I|+|J|)};embed:left-to-right";
  j["basis"] = "bosons-first";
  if (c.command == "spectrum" || c.command == "bethe") {
    if (c.M % 2 == 1 && c.M >= 1 && c.n >= 0) j["spectral"] = SpectralConvention::frozen(EigenvalueModel(c.M, c.n)).id();
  }
  return j;
}

void ensure(bool ok, const std::string& message) {
  if (!ok) throw ValidationError(message);
}

Json run_checks(const RunConfig& c, bool* pass) {
  ensure(c.samples >= 1, "samples must be at least 1");
  ensure(c.bound >= 1, "bound must be at least 1");
  ensure(c.L >= 1, "L must be at least 1");
  ensure(c.tolerance > 0.0, "tolerance must be positive");
  ModelParams p(c.M, c.n);
  RationalSampler rs(c.seed, c.bound);
  Json out;
  std::vector<CheckReport> reports;
  if (c.command == "verify-ybe" || c.command == "verify-re" || c.command == "commute") {
    auto pairs = rs.pairs(static_cast<std::size_t>(c.samples));
    out["samples"] = sample_strings(pairs);
    if (c.command == "verify-ybe") {
      reports.push_back(c.exact ? check_ybe<G>(p, pairs) : check_ybe<Complex>(p, to_float(pairs), c.tolerance));
    } else if (c.command == "verify-re") {
      auto spec = boundary_of(c);
      reports.push_back(c.exact ? check_reflection<G>(spec, pairs)
                                : check_reflection<Complex>(spec, to_float(pairs), c.tolerance));
    } else {
      ChainConfig cfg = (c.open || c.boundary) ? ChainConfig::open_chain(p, c.L, boundary_of(c), boundary_of(c))
                                               : ChainConfig::closed(p, c.L);
      cfg.validate();
      reports.push_back(c.exact ? check_commutativity<G>(cfg, pairs)
                                : check_commutativity<Complex>(cfg, to_float(pairs), c.tolerance));
    }
  } else if (c.command == "verify-unitarity" || c.command == "verify-crossing") {
    auto us = rs.rationals(static_cast<std::size_t>(c.samples));
    out["samples"] = sample_strings(us);
    if (c.command == "verify-unitarity") {
      reports.push_back(c.exact ? check_unitarity<G>(p, us) : check_unitarity<Complex>(p, to_float(us), c.tolerance));
    } else {
      reports.push_back(c.exact ? check_crossing<G>(p, us) : check_crossing<Complex>(p, to_float(us), c.tolerance));
    }
  } else if (c.command == "spectrum") {
    EigenvalueModel model(c.M, c.n);
    auto lams = rs.rationals(static_cast<std::size_t>(c.samples));
    out["samples"] = sample_strings(lams);
    auto conv = SpectralConvention::frozen(model);
    auto spec = boundary_of(c);
    if (std::holds_alternative<family::Identity>(spec.family)) {
      reports.push_back(verify_pseudovacuum(model, c.L, lams, conv, c.exact ? 1e-8 : c.tolerance));
    } else {
      reports.push_back(check_vacuum_eigenstate(model, c.L, spec, lams, conv));
    }
  } else if (c.command == "bethe") {
    EigenvalueModel model(c.M, c.n);
    SolverOptions opt;
    opt.seed = c.seed;
    opt.starts = c.starts;
    ensure(c.starts >= 1, "starts must be at least 1");
    auto occ = c.occupancies;
    if (occ.empty()) occ.assign(static_cast<std::size_t>(model.n + model.m), 0);
    auto res = solve_bethe(model, c.L, occ, opt);
    out["bethe"] = res.to_json();
    bool ok = !res.solutions.empty();
    for (const auto& s : res.solutions) ok = ok && s.max_residual < opt.tolerance;
    // Residue checks where every occupied level has available dressing factors.
    bool dressable = true;
    for (std::size_t l = 0; l < occ.size(); ++l) dressable = dressable && (occ[l] == 0 || static_cast<int>(l) + 1 <= model.n - 1);
    if (dressable) {
      for (const auto& s : res.solutions) reports.push_back(residue_check(model, c.L, s.config, 1e-8, SpectralConvention::frozen(model)));
    }
    Json checks = Json::array();
    for (const auto& r : reports) {
      checks.push_back(r.to_json());
      ok = ok && r.pass;
    }
    out["checks"] = checks;
    *pass = ok;
    return out;
  } else {
    throw ValidationError("unknown command: " + c.command);
  }
  Json checks = Json::array();
  bool ok = true;
  for (const auto& r : reports) {
    checks.push_back(r.to_json());
    ok = ok && r.pass;
  }
  out["checks"] = checks;
  *pass = ok;
  return out;
}

Json diagnostic(const std::string& kind, const std::string& message) {
  Json j;
  j["schema"] = 1;
  j["tool"] = "ospchain";
  j["version"] = tool_version();
  j["error"] = {{"kind", kind}, {"message", message}};
  j["pass"] = false;
  return j;
}

bool write_report(const std::string& path, const Json& report) {
  std::error_code ec;
  auto parent = std::filesystem::path(path).parent_path();
  if (!parent.empty()) std::filesystem::create_directories(parent, ec);
  std::ofstream out(path, std::ios::binary);
  if (!out) return false;
  out << report.dump(2) << '\n';
  return static_cast<bool>(out);
}

}  // namespace

std::string tool_version() { return OSPCHAIN_VERSION; }

const std::vector<std::string>& commands() {
  static const std::vector<std::string> list{"verify-ybe", "verify-re", "verify-crossing", "verify-unitarity",
                                             "commute",    "spectrum",  "bethe"};
  return list;
}

Json RunConfig::to_json() const {
  Json j;
  j["command"] = command;
  j["M"] = M;
  j["n"] = n;
  j["L"] = L;
  if (boundary) j["boundary"] = *boundary;
  j["open"] = open;
  j["samples"] = samples;
  j["seed"] = seed;
  j["bound"] = bound;
  j["scalar"] = exact ? "exact" : "float";
  if (!exact) j["tolerance"] = tolerance;
  if (command == "bethe") {
    j["occupancies"] = occupancies;
    j["starts"] = starts;
  }
  return j;
}

RunConfig RunConfig::from_json(const Json& j) {
  if (!j.is_object()) throw ValidationError("config must be a JSON object");
  RunConfig c;
  for (const auto& [key, value] : j.items()) {
    try {
      if (key == "command") c.command = value.get<std::string>();
      else if (key == "M") c.M = value.get<int>();
      else if (key == "n") c.n = value.get<int>();
      else if (key == "L") c.L = value.get<int>();
      else if (key == "boundary") c.boundary = value;
      else if (key == "open") c.open = value.get<bool>();
      else if (key == "samples") c.samples = value.get<int>();
      else if (key == "seed") c.seed = value.get<std::uint64_t>();
      else if (key == "bound") c.bound = value.get<long>();
      else if (key == "scalar") {
        auto s = value.get<std::string>();
        if (s != "exact" && s != "float") throw ValidationError("scalar must be exact or float");
        c.exact = s == "exact";
      } else if (key == "tolerance") c.tolerance = value.get<double>();
      else if (key == "output") c.output = value.get<std::string>();
      else if (key == "occupancies") c.occupancies = value.get<std::vector<int>>();
      else if (key == "starts") c.starts = value.get<int>();
      else throw ValidationError("unknown config key: " + key);
    } catch (const nlohmann::json::exception& e) {
      throw ValidationError("bad value for config key " + key + ": " + e.what());
    }
  }
  return c;
}

std::string report_path(const RunConfig& config) {
  if (config.output) return *config.output;
  const char* dir = std::getenv("OSPCHAIN_OUTPUT_DIR");
  std::filesystem::path base = dir && *dir ? dir : ".";
  return (base / ("ospchain-" + (config.command.empty() ? std::string("report") : config.command) + ".json")).string();
}

RunResult run(const RunConfig& config) {
  RunResult res;
  try {
    if (std::find(commands().begin(), commands().end(), config.command) == commands().end()) {
      throw ValidationError("unknown command: " + config.command);
    }
    bool pass = false;
    Json body = run_checks(config, &pass);
    Json r;
    r["schema"] = 1;
    r["tool"] = "ospchain";
    r["version"] = tool_version();
    r["command"] = config.command;
    r["config"] = config.to_json();
    r["conventions"] = conventions(config);
    r["seed"] = config.seed;
    for (const auto& [k, v] : body.items()) r[k] = v;
    r["pass"] = pass;
    res.report = std::move(r);
    res.exit_code = pass ? kExitPass : kExitFail;
  } catch (const ValidationError& e) {
    res.report = diagnostic("validation", e.what());
    res.exit_code = kExitUsage;
  } catch (const DomainError& e) {
    res.report = diagnostic("domain", e.what());
    res.exit_code = kExitUsage;
  } catch (const std::exception& e) {
    res.report = diagnostic("error", e.what());
    res.exit_code = kExitUsage;
  }
  if (res.exit_code == kExitUsage) res.report["config"] = config.to_json();
  return res;
}

int main_entry(int argc, char** argv) {
  CLI::App app{"Exact verification and spectrum driver for osp(M|2n) spin chains", "ospchain"};
  app.set_version_flag("--version", tool_version());
  RunConfig flags;
  std::string config_path, scalar_flag, family;
  std::string bvals[std::size(kBoundaryKeys)];
  std::string output;
  bool exact = false, floating = false;
  app.add_option("command", flags.command, "verify-ybe | verify-re | verify-crossing | verify-unitarity | commute | spectrum | bethe")
      ->required();
  app.add_option("--config", config_path, "JSON file with the same fields; flags win");
  auto* oM = app.add_option("--M", flags.M, "number of bosonic directions");
  auto* on = app.add_option("--n", flags.n, "half the number of fermionic directions");
  auto* oL = app.add_option("--L", flags.L, "chain length");
  auto* osamples = app.add_option("--samples", flags.samples, "random samples");
  auto* oseed = app.add_option("--seed", flags.seed, "sampler seed");
  auto* obound = app.add_option("--bound", flags.bound, "bound on sample numerators and denominators");
  auto* oexact = app.add_flag("--exact", exact, "exact Gaussian-rational arithmetic (default)");
  auto* ofloat = app.add_flag("--float", floating, "complex double arithmetic");
  oexact->excludes(ofloat);
  auto* otol = app.add_option("--tolerance", flags.tolerance, "float tolerance (ignored in exact mode)");
  auto* oout = app.add_option("--output", output, "report path");
  auto* oopen = app.add_flag("--open", flags.open, "open chain for commute");
  auto* oocc = app.add_option("--occupancies", flags.occupancies, "Bethe occupancies per level")->delimiter(',');
  auto* ostarts = app.add_option("--starts", flags.starts, "Bethe solver starts");
  auto* ofamily = app.add_option("--family", family, "boundary family");
  std::vector<CLI::Option*> bopts;
  for (std::size_t k = 0; k < std::size(kBoundaryKeys); ++k) {
    std::string name = kBoundaryKeys[k];
    std::string flag = name == "cM_override" ? "--cM-override" : "--" + name;
    bopts.push_back(app.add_option(flag, bvals[k], "boundary parameter " + name));
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << diagnostic("usage", e.what()).dump() << '\n';
    return kExitUsage;
  }

  RunConfig cfg;
  try {
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) throw ValidationError("cannot read config file: " + config_path);
      Json j;
      try {
        j = Json::parse(in);
      } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("config is not valid JSON: ") + e.what());
      }
      cfg = RunConfig::from_json(j);
    }
    cfg.command = flags.command;
    if (oM->count()) cfg.M = flags.M;
    if (on->count()) cfg.n = flags.n;
    if (oL->count()) cfg.L = flags.L;
    if (osamples->count()) cfg.samples = flags.samples;
    if (oseed->count()) cfg.seed = flags.seed;
    if (obound->count()) cfg.bound = flags.bound;
    if (oexact->count()) cfg.exact = true;
    if (ofloat->count()) cfg.exact = false;
    if (otol->count()) cfg.tolerance = flags.tolerance;
    if (oout->count()) cfg.output = output;
    if (oopen->count()) cfg.open = flags.open;
    if (oocc->count()) cfg.occupancies = flags.occupancies;
    if (ostarts->count()) cfg.starts = flags.starts;
    bool any_param = false;
    for (auto* o : bopts) any_param = any_param || o->count() > 0;
    if (ofamily->count() || any_param) {
      Json b = cfg.boundary.value_or(Json::object());
      if (ofamily->count() && b.value("family", std::string()) != family) b = Json{{"family", family}};
      for (std::size_t k = 0; k < std::size(kBoundaryKeys); ++k) {
        if (!bopts[k]->count()) continue;
        const std::string& v = bvals[k];
        const std::string key = kBoundaryKeys[k];
        if (key == "m1" || key == "n1") b[key] = std::stoi(v);
        else if (!v.empty() && v.front() == '{') b[key] = Json::parse(v);
        else b[key] = v;
      }
      cfg.boundary = b;
    }
  } catch (const std::exception& e) {
    std::cerr << diagnostic("usage", e.what()).dump() << '\n';
    return kExitUsage;
  }

  RunResult res = run(cfg);
  const std::string path = report_path(cfg);
  if (!write_report(path, res.report)) {
    std::cerr << diagnostic("io", "cannot write report to " + path).dump() << '\n';
    return kExitUsage;
  }
  if (res.exit_code == kExitUsage) std::cerr << res.report["error"].dump() << '\n';
  std::cout << cfg.command << ": " << (res.exit_code == kExitPass ? "pass" : res.exit_code == kExitFail ? "FAIL" : "error")
            << " (" << path << ")\n";
  return res.exit_code;
}

}  // namespace ospchain::cli
