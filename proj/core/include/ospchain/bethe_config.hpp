#pragma once

#include <complex>
#include <vector>

#include <nlohmann/json.hpp>

namespace ospchain {

/// Occupancies M^(l) and roots lambda_j^(l) for levels l = 1..levels.
/// roots[l-1] holds the roots of level l.
struct BetheConfiguration {
  std::vector<std::vector<std::complex<double>>> roots;

  static BetheConfiguration empty(int levels) {
    return BetheConfiguration{std::vector<std::vector<std::complex<double>>>(static_cast<std::size_t>(levels))};
  }

  int levels() const noexcept { return static_cast<int>(roots.size()); }
  int occupancy(int level) const {
    if (level < 1 || level > levels()) return 0;
    return static_cast<int>(roots[static_cast<std::size_t>(level - 1)].size());
  }
  int total() const {
    int t = 0;
    for (const auto& r : roots) t += static_cast<int>(r.size());
    return t;
  }
  std::vector<int> occupancies() const {
    std::vector<int> out;
    for (const auto& r : roots) out.push_back(static_cast<int>(r.size()));
    return out;
  }
  const std::vector<std::complex<double>>& level(int l) const { return roots.at(static_cast<std::size_t>(l - 1)); }

  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json j;
    j["occupancies"] = occupancies();
    nlohmann::ordered_json rs = nlohmann::ordered_json::array();
    for (const auto& lvl : roots) {
      nlohmann::ordered_json row = nlohmann::ordered_json::array();
      for (const auto& z : lvl) row.push_back({z.real(), z.imag()});
      rs.push_back(row);
    }
    j["roots"] = rs;
    return j;
  }
};

}  // namespace ospchain
