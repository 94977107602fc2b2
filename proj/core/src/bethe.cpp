#include "ospchain/bethe.hpp"

#include <Eigen/LU>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>

namespace ospchain {

namespace {

constexpr double kPi = std::numbers::pi;
// Roots this large make every factor trivially close to 1.
constexpr double kEscape = 1e6;

Complex wrap(Complex z) {
  double im = std::remainder(z.imag(), 2.0 * kPi);
  if (im <= -kPi) im += 2.0 * kPi;
  return {z.real(), im};
}

// d/dlambda log e_x(lambda)
Complex dlog_e(double x, Complex lambda) {
  const Complex h(0.0, x / 2.0);
  return 1.0 / (lambda + h) - 1.0 / (lambda - h);
}

Complex log_e(double x, Complex lambda) { return std::log(e_factor(x, lambda)); }

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

struct Flat {
  std::vector<int> level;  // 1-based level of each flattened root
  std::vector<int> index;  // position within its level
};

Flat flatten(const BetheConfiguration& cfg) {
  Flat f;
  for (int l = 1; l <= cfg.levels(); ++l) {
    for (int j = 0; j < cfg.occupancy(l); ++j) {
      f.level.push_back(l);
      f.index.push_back(j);
    }
  }
  return f;
}

std::vector<Complex> raw_residuals(const EigenvalueModel& model, int L, const BetheConfiguration& cfg) {
  std::vector<Complex> out;
  for (int l = 1; l <= cfg.levels(); ++l) {
    const auto eq = bethe_equation(model, L, l);
    for (int i = 0; i < cfg.occupancy(l); ++i) {
      const Complex li = cfg.level(l)[static_cast<std::size_t>(i)];
      Complex r = eq.driving == 0 ? Complex(0.0) : static_cast<double>(eq.driving) * log_e(1.0, li);
      for (const auto& c : eq.couplings) {
        if (c.level < 1 || c.level > cfg.levels()) continue;
        const auto& other = cfg.level(c.level);
        for (std::size_t j = 0; j < other.size(); ++j) {
          if (c.skip_self && static_cast<int>(j) == i) continue;
          for (double eps : {1.0, -1.0}) r -= log_e(c.x, li - eps * other[j]);
        }
      }
      out.push_back(r);
    }
  }
  return out;
}

BetheConfiguration unflatten(const BetheConfiguration& shape, const Eigen::VectorXcd& z) {
  BetheConfiguration out = shape;
  Eigen::Index k = 0;
  for (auto& lvl : out.roots) {
    for (auto& r : lvl) r = z(k++);
  }
  return out;
}

Eigen::VectorXcd to_vector(const BetheConfiguration& cfg) {
  Eigen::VectorXcd z(cfg.total());
  Eigen::Index k = 0;
  for (const auto& lvl : cfg.roots) {
    for (auto r : lvl) z(k++) = r;
  }
  return z;
}

/// Empty when acceptable, otherwise the rejection reason.
std::string spurious(const EigenvalueModel& model, int L, const BetheConfiguration& cfg, double tol) {
  for (int l = 1; l <= cfg.levels(); ++l) {
    const auto& lvl = cfg.level(l);
    for (std::size_t i = 0; i < lvl.size(); ++i) {
      if (std::abs(lvl[i]) < tol) return "root at zero";
      if (std::abs(lvl[i]) > kEscape) return "root escaped to infinity";
      for (std::size_t j = i + 1; j < lvl.size(); ++j) {
        if (std::abs(lvl[i] - lvl[j]) < tol || std::abs(lvl[i] + lvl[j]) < tol) return "coincident roots";
      }
      const auto eq = bethe_equation(model, L, l);
      auto near_pole = [&](double x, Complex arg) {
        const Complex h(0.0, x / 2.0);
        return std::abs(arg - h) < tol || std::abs(arg + h) < tol;
      };
      if (eq.driving != 0 && near_pole(1.0, lvl[i])) return "root adjacent to a pole";
      for (const auto& c : eq.couplings) {
        if (c.level < 1 || c.level > cfg.levels()) continue;
        const auto& other = cfg.level(c.level);
        for (std::size_t j = 0; j < other.size(); ++j) {
          if (c.skip_self && j == i) continue;
          for (double eps : {1.0, -1.0}) {
            if (near_pole(c.x, lvl[i] - eps * other[j])) return "root adjacent to a pole";
          }
        }
      }
    }
  }
  return {};
}

bool finite(const std::vector<Complex>& v) {
  return std::all_of(v.begin(), v.end(), [](Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); });
}

}  // namespace

Complex e_factor(double x, Complex lambda) {
  const Complex den = lambda - Complex(0.0, x / 2.0);
  if (den == Complex(0.0)) throw PoleError("lambda = i*" + fmt(x) + "/2", "e_x pole");
  return (lambda + Complex(0.0, x / 2.0)) / den;
}

void require_bethe_rank(const EigenvalueModel& model) {
  if (model.n <= 1 || model.m == 0) {
    throw DomainError("unsupported rank degeneration: the Bethe equations need n >= 2 and m >= 1 (got n=" +
                      std::to_string(model.n) + ", m=" + std::to_string(model.m) + ")");
  }
}

BetheEquation bethe_equation(const EigenvalueModel& model, int L, int level) {
  const int n = model.n, top = model.n + model.m;
  if (level < 1 || level > top) throw DomainError("Bethe level out of range: " + std::to_string(level));
  BetheEquation eq;
  if (level == 1) {
    eq.driving = 2 * L;
    eq.couplings = {{2.0, 1, true}, {-1.0, 2, false}};
  } else if (level == n) {
    eq.couplings = {{1.0, n + 1, false}, {-1.0, n - 1, false}};
  } else if (level == top) {
    eq.couplings = {{1.0, top, true}, {-1.0, top - 1, false}};
  } else {
    eq.couplings = {{2.0, level, true}, {-1.0, level - 1, false}, {-1.0, level + 1, false}};
  }
  return eq;
}

std::vector<Complex> bethe_residuals(const EigenvalueModel& model, int L, const BetheConfiguration& cfg) {
  require_bethe_rank(model);
  if (cfg.levels() != model.n + model.m) {
    throw ValidationError("configuration has " + std::to_string(cfg.levels()) + " levels, expected " +
                          std::to_string(model.n + model.m));
  }
  auto r = raw_residuals(model, L, cfg);
  for (auto& z : r) z = wrap(z);
  return r;
}

std::vector<std::vector<Complex>> bethe_jacobian(const EigenvalueModel& model, int L, const BetheConfiguration& cfg) {
  const Flat f = flatten(cfg);
  const std::size_t N = f.level.size();
  std::vector<std::vector<Complex>> J(N, std::vector<Complex>(N, Complex(0.0)));
  // Offset of each level inside the flattened vector.
  std::vector<std::size_t> offset(static_cast<std::size_t>(cfg.levels()) + 2, 0);
  for (int l = 1; l <= cfg.levels(); ++l) offset[static_cast<std::size_t>(l) + 1] = offset[static_cast<std::size_t>(l)] + static_cast<std::size_t>(cfg.occupancy(l));
  for (std::size_t row = 0; row < N; ++row) {
    const int l = f.level[row];
    const int i = f.index[row];
    const auto eq = bethe_equation(model, L, l);
    const Complex li = cfg.level(l)[static_cast<std::size_t>(i)];
    if (eq.driving != 0) J[row][row] += static_cast<double>(eq.driving) * dlog_e(1.0, li);
    for (const auto& c : eq.couplings) {
      if (c.level < 1 || c.level > cfg.levels()) continue;
      const auto& other = cfg.level(c.level);
      for (std::size_t j = 0; j < other.size(); ++j) {
        if (c.skip_self && static_cast<int>(j) == i) continue;
        const std::size_t col = offset[static_cast<std::size_t>(c.level)] + j;
        for (double eps : {1.0, -1.0}) {
          const Complex d = dlog_e(c.x, li - eps * other[j]);
          J[row][row] -= d;
          J[row][col] += eps * d;
        }
      }
    }
  }
  return J;
}

double max_abs(const std::vector<Complex>& v) {
  double m = 0.0;
  for (auto z : v) m = std::max(m, std::abs(z));
  return m;
}

Json SolverOptions::to_json() const {
  Json j;
  j["seed"] = seed;
  j["starts"] = starts;
  j["max_iterations"] = max_iterations;
  j["tolerance"] = tolerance;
  j["dedup_tolerance"] = dedup_tolerance;
  j["pole_distance"] = pole_distance;
  j["occupancy_cap"] = occupancy_cap;
  return j;
}

Json BetheSolveResult::to_json() const {
  Json j;
  j["M"] = M;
  j["n"] = n;
  j["L"] = L;
  j["occupancies"] = occupancies;
  j["solver"] = options.to_json();
  Json sols = Json::array();
  for (const auto& s : solutions) {
    Json r = s.config.to_json();
    r["max_residual"] = fmt(s.max_residual);
    r["start"] = s.start;
    r["iterations"] = s.iterations;
    sols.push_back(r);
  }
  j["solutions"] = sols;
  Json diag = Json::object();
  for (const char* status : {"converged", "duplicate", "rejected", "failed"}) diag[status] = 0;
  Json issues = Json::array();
  for (const auto& o : outcomes) {
    diag[o.status] = diag[o.status].get<int>() + 1;
    if (o.status == "rejected" || o.status == "failed") {
      Json rec;
      rec["start"] = o.start;
      rec["status"] = o.status;
      rec["detail"] = o.detail;
      rec["residual"] = fmt(o.residual);
      issues.push_back(rec);
    }
  }
  j["diagnostics"] = diag;
  j["non_converged"] = issues;
  return j;
}

BetheConfiguration canonical(const BetheConfiguration& cfg) {
  BetheConfiguration out = cfg;
  for (auto& lvl : out.roots) {
    for (auto& r : lvl) {
      if (r.real() < 0.0 || (r.real() == 0.0 && r.imag() < 0.0)) r = -r;
    }
    std::sort(lvl.begin(), lvl.end(), [](Complex a, Complex b) {
      return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
    });
  }
  return out;
}

double configuration_distance(const BetheConfiguration& a, const BetheConfiguration& b) {
  // Greedy matching within each level, modulo sign.
  double worst = 0.0;
  for (std::size_t l = 0; l < a.roots.size(); ++l) {
    if (a.roots[l].size() != b.roots[l].size()) return std::numeric_limits<double>::infinity();
    auto rest = b.roots[l];
    for (auto z : a.roots[l]) {
      std::size_t best = 0;
      double bd = std::numeric_limits<double>::infinity();
      for (std::size_t k = 0; k < rest.size(); ++k) {
        double d = std::min(std::abs(z - rest[k]), std::abs(z + rest[k]));
        if (d < bd) {
          bd = d;
          best = k;
        }
      }
      worst = std::max(worst, bd);
      rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(best));
    }
  }
  return worst;
}

BetheSolveResult solve_bethe(const EigenvalueModel& model, int L, const std::vector<int>& occupancies,
                             const SolverOptions& options) {
  require_bethe_rank(model);
  const int levels = model.n + model.m;
  if (static_cast<int>(occupancies.size()) != levels) {
    throw ValidationError("expected " + std::to_string(levels) + " occupancies, got " +
                          std::to_string(occupancies.size()));
  }
  int total = 0;
  for (int o : occupancies) {
    if (o < 0) throw ValidationError("occupancies must be non-negative");
    total += o;
  }
  if (total > options.occupancy_cap) {
    throw ValidationError("total occupancy " + std::to_string(total) + " exceeds the cap " +
                          std::to_string(options.occupancy_cap));
  }
  if (L < 1) throw ValidationError("L must be positive");

  BetheSolveResult res;
  res.M = model.M();
  res.n = model.n;
  res.L = L;
  res.occupancies = occupancies;
  res.options = options;

  BetheConfiguration shape = BetheConfiguration::empty(levels);
  for (int l = 0; l < levels; ++l) shape.roots[static_cast<std::size_t>(l)].resize(static_cast<std::size_t>(occupancies[static_cast<std::size_t>(l)]));
  if (total == 0) {
    res.solutions.push_back({shape, 0.0, 0, 0});
    res.outcomes.push_back({0, "converged", "", 0.0});
    return res;
  }

  for (int s = 0; s < options.starts; ++s) {
    std::mt19937_64 rng(options.seed * 0x9E3779B97F4A7C15ULL + static_cast<std::uint64_t>(s));
    std::uniform_real_distribution<double> re(0.05, 2.0), im(-0.6, 0.6);
    // Half of the starts stay on the real axis.
    const bool real_start = s % 2 == 0;
    BetheConfiguration cfg = shape;
    for (auto& lvl : cfg.roots) {
      for (auto& r : lvl) r = Complex(re(rng), real_start ? 0.0 : im(rng));
    }
    Eigen::VectorXcd z = to_vector(cfg);
    StartOutcome out{s, "failed", "iteration limit", 0.0};
    int it = 0;
    double norm = std::numeric_limits<double>::infinity();
    try {
      auto r = bethe_residuals(model, L, cfg);
      norm = max_abs(r);
      for (; it < options.max_iterations && norm >= options.tolerance; ++it) {
        auto Jv = bethe_jacobian(model, L, cfg);
        Eigen::MatrixXcd J(z.size(), z.size());
        Eigen::VectorXcd F(z.size());
        for (Eigen::Index a = 0; a < z.size(); ++a) {
          F(a) = r[static_cast<std::size_t>(a)];
          for (Eigen::Index b = 0; b < z.size(); ++b) J(a, b) = Jv[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
        }
        Eigen::FullPivLU<Eigen::MatrixXcd> lu(J);
        if (!lu.isInvertible()) {
          out.detail = "singular Jacobian";
          break;
        }
        Eigen::VectorXcd step = lu.solve(F);
        double t = 1.0;
        bool improved = false;
        for (int h = 0; h < 30; ++h, t *= 0.5) {
          Eigen::VectorXcd trial = z - t * step;
          BetheConfiguration tc = unflatten(shape, trial);
          std::vector<Complex> tr;
          try {
            tr = bethe_residuals(model, L, tc);
          } catch (const PoleError&) {
            continue;
          }
          if (!finite(tr)) continue;
          double tn = max_abs(tr);
          if (tn < norm) {
            z = trial;
            cfg = tc;
            r = tr;
            norm = tn;
            improved = true;
            break;
          }
        }
        if (!improved) {
          out.detail = "line search stalled";
          break;
        }
      }
    } catch (const PoleError& e) {
      out.detail = std::string("pole at ") + e.point();
    }
    out.residual = norm;
    if (norm < options.tolerance) {
      std::string why = spurious(model, L, cfg, options.pole_distance);
      if (!why.empty()) {
        out.status = "rejected";
        out.detail = why;
      } else {
        BetheConfiguration c = canonical(cfg);
        bool dup = false;
        for (const auto& sol : res.solutions) dup = dup || configuration_distance(sol.config, c) < options.dedup_tolerance;
        if (dup) {
          out.status = "duplicate";
          out.detail.clear();
        } else {
          out.status = "converged";
          out.detail.clear();
          res.solutions.push_back({c, norm, s, it});
        }
      }
    }
    res.outcomes.push_back(out);
  }
  std::sort(res.solutions.begin(), res.solutions.end(), [](const BetheSolution& a, const BetheSolution& b) {
    for (std::size_t l = 0; l < a.config.roots.size(); ++l) {
      for (std::size_t k = 0; k < a.config.roots[l].size(); ++k) {
        Complex x = a.config.roots[l][k], y = b.config.roots[l][k];
        if (std::abs(x - y) > 1e-9) return x.real() != y.real() ? x.real() < y.real() : x.imag() < y.imag();
      }
    }
    return false;
  });
  return res;
}

}  // namespace ospchain
