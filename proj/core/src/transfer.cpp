#include "ospchain/transfer.hpp"

namespace ospchain {

ChainConfig ChainConfig::closed(const ModelParams& p, int L, Normalization norm) {
  ChainConfig c;
  c.params = p;
  c.L = L;
  c.normalization = norm;
  c.open = false;
  c.kminus = BoundarySpec{p.M, p.n, family::Identity{}};
  c.kplus_source = c.kminus;
  return c;
}

ChainConfig ChainConfig::open_chain(const ModelParams& p, int L, BoundarySpec kminus, BoundarySpec kplus_source,
                                    Normalization norm) {
  ChainConfig c;
  c.params = p;
  c.L = L;
  c.normalization = norm;
  c.open = true;
  c.kminus = std::move(kminus);
  c.kplus_source = std::move(kplus_source);
  return c;
}

std::size_t ChainConfig::full_dimension() const {
  std::size_t d = 1;
  for (int k = 0; k <= L; ++k) {
    d *= static_cast<std::size_t>(params.dim());
    if (d > (std::size_t{1} << 40)) break;
  }
  return d;
}

void ChainConfig::validate() const {
  if (L < 1) throw ValidationError("chain length L must be >= 1");
  if (full_dimension() > dimension_cap) {
    throw DomainError("chain dimension (M+2n)^(L+1) = " + std::to_string(full_dimension()) + " exceeds the cap " +
                      std::to_string(dimension_cap));
  }
  if (open) {
    if (kminus.M != params.M || kminus.n != params.n || kplus_source.M != params.M || kplus_source.n != params.n) {
      throw ValidationError("boundary specs target a different model");
    }
    kminus.validate();
    kplus_source.validate();
  }
}

std::vector<GradedSpace> ChainConfig::aux_chain() const {
  return std::vector<GradedSpace>(static_cast<std::size_t>(L + 1), params.space);
}

std::vector<std::string> ChainConfig::aux_labels() const {
  std::vector<std::string> out{"a"};
  for (int k = 1; k <= L; ++k) out.push_back(std::to_string(k));
  return out;
}

std::vector<GradedSpace> ChainConfig::quantum_chain() const {
  return std::vector<GradedSpace>(static_cast<std::size_t>(L), params.space);
}

std::vector<std::string> ChainConfig::quantum_labels() const {
  std::vector<std::string> out;
  for (int k = 1; k <= L; ++k) out.push_back(std::to_string(k));
  return out;
}

Json ChainConfig::to_json() const {
  Json j;
  j["M"] = params.M;
  j["n"] = params.n;
  j["L"] = L;
  j["normalization"] = normalization == Normalization::kRational ? "rational" : "polynomial";
  j["open"] = open;
  if (open) {
    j["kminus"] = kminus.to_json();
    j["kplus_source"] = kplus_source.to_json();
  }
  return j;
}

}  // namespace ospchain
