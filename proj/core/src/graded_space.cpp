#include "ospchain/graded_space.hpp"

#include "ospchain/errors.hpp"

namespace ospchain {

std::string SupertransposeConvention::id() const {
  std::string t = theta == ThetaPattern::kPlusMinus ? "plus-minus" : theta == ThetaPattern::kMinusPlus ? "minus-plus" : "all-plus";
  std::string s;
  switch (sign) {
    case TransposeSign::kIJplusJ: s = "ij+j"; break;
    case TransposeSign::kIJplusI: s = "ij+i"; break;
    case TransposeSign::kIJ: s = "ij"; break;
    case TransposeSign::kOne: s = "one"; break;
  }
  return "theta:" + t + ";s:" + s;
}

std::vector<SupertransposeConvention> all_supertranspose_conventions() {
  std::vector<SupertransposeConvention> out;
  for (auto t : {ThetaPattern::kPlusMinus, ThetaPattern::kMinusPlus, ThetaPattern::kAllPlus}) {
    for (auto s : {TransposeSign::kIJplusJ, TransposeSign::kIJplusI, TransposeSign::kIJ, TransposeSign::kOne}) {
      out.push_back({t, s});
    }
  }
  return out;
}

GradedSpace::GradedSpace(int M, int n) : M_(M), n_(n) {
  if (M < 0 || n < 0) throw ValidationError("M and n must be non-negative");
  if (M + 2 * n == 0) throw ValidationError("graded space must be non-trivial");
  fill();
}

GradedSpace::GradedSpace(int M, int n, std::vector<int> order) : M_(M), n_(n), order_(std::move(order)) {
  if (M < 0 || n < 0) throw ValidationError("M and n must be non-negative");
  if (M + 2 * n == 0) throw ValidationError("graded space must be non-trivial");
  const int d = M + 2 * n;
  if (static_cast<int>(order_.size()) != d) throw ValidationError("basis order has wrong length");
  std::vector<bool> seen(static_cast<std::size_t>(d), false);
  for (int v : order_) {
    if (v < 0 || v >= d || seen[static_cast<std::size_t>(v)]) throw ValidationError("basis order is not a bijection");
    seen[static_cast<std::size_t>(v)] = true;
  }
  bool identity = true;
  for (int k = 0; k < d; ++k) identity = identity && order_[static_cast<std::size_t>(k)] == k;
  if (identity) order_.clear();
  fill();
}

void GradedSpace::fill() {
  const int d = dim();
  std::vector<int> inv(static_cast<std::size_t>(d));
  for (int k = 0; k < d; ++k) inv[static_cast<std::size_t>(standard_index(k))] = k;
  grade_.assign(static_cast<std::size_t>(d), 0);
  conj_.assign(static_cast<std::size_t>(d), 0);
  for (int k = 0; k < d; ++k) {
    int s = standard_index(k);
    grade_[static_cast<std::size_t>(k)] = s < M_ ? 0 : 1;
    int cs = s < M_ ? M_ - 1 - s : 2 * M_ + 2 * n_ - 1 - s;
    conj_[static_cast<std::size_t>(k)] = inv[static_cast<std::size_t>(cs)];
  }
}

GradedSpace GradedSpace::relabeled(const std::vector<int>& perm) const {
  if (static_cast<int>(perm.size()) != dim()) throw ValidationError("permutation has wrong length");
  std::vector<int> order(perm.size());
  for (std::size_t k = 0; k < perm.size(); ++k) {
    if (perm[k] < 0 || perm[k] >= dim()) throw ValidationError("permutation entry out of range");
    order[k] = standard_index(perm[k]);
  }
  return {M_, n_, std::move(order)};
}

int GradedSpace::theta(int i, ThetaPattern p) const noexcept {
  int s = standard_index(i);
  if (s < M_) return 1;
  int k = s - M_;
  switch (p) {
    case ThetaPattern::kPlusMinus: return k < n_ ? 1 : -1;
    case ThetaPattern::kMinusPlus: return k < n_ ? -1 : 1;
    case ThetaPattern::kAllPlus: return 1;
  }
  return 1;
}

int GradedSpace::transpose_sign(int i, int j, TransposeSign s) const noexcept {
  int gi = grade(i);
  int gj = grade(j);
  int e = 0;
  switch (s) {
    case TransposeSign::kIJplusJ: e = gi * gj + gj; break;
    case TransposeSign::kIJplusI: e = gi * gj + gi; break;
    case TransposeSign::kIJ: e = gi * gj; break;
    case TransposeSign::kOne: e = 0; break;
  }
  return (e & 1) ? -1 : 1;
}

}  // namespace ospchain
