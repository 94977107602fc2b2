#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace ospchain {

using Json = nlohmann::ordered_json;

/// Result of an identity check over a list of samples.
struct CheckReport {
  std::string check;
  int M = 0;
  int n = 0;
  std::vector<Json> samples;
  std::size_t skipped = 0;
  bool pass = true;
  Json extra = Json::object();

  Json to_json() const {
    Json out;
    out["check"] = check;
    out["M"] = M;
    out["n"] = n;
    for (const auto& [k, v] : extra.items()) out[k] = v;
    out["samples"] = samples;
    out["skipped"] = skipped;
    out["pass"] = pass;
    return out;
  }
};

}  // namespace ospchain
