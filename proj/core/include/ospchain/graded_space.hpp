#pragma once

#include <string>
#include <vector>

namespace ospchain {

/// Fermionic sign pattern used by the super transpose.
enum class ThetaPattern { kPlusMinus, kMinusPlus, kAllPlus };
/// Sign s(i,j) multiplying the transposed entry.
enum class TransposeSign { kIJplusJ, kIJplusI, kIJ, kOne };

struct SupertransposeConvention {
  ThetaPattern theta = ThetaPattern::kPlusMinus;
  TransposeSign sign = TransposeSign::kIJplusJ;

  std::string id() const;
  friend bool operator==(const SupertransposeConvention&, const SupertransposeConvention&) = default;
};

/// The frozen convention (selected by select_supertranspose_convention).
inline constexpr SupertransposeConvention kFrozenConvention{};

std::vector<SupertransposeConvention> all_supertranspose_conventions();

/// Z2-graded space C^{M|2n}. Indices are 0-based. The standard basis puts
/// the M bosons first; a relabeled space carries `order`, where basis
/// vector i of the relabeled space is standard vector order[i].
class GradedSpace {
 public:
  GradedSpace() = default;
  GradedSpace(int M, int n);
  GradedSpace(int M, int n, std::vector<int> order);

  int M() const noexcept { return M_; }
  int n() const noexcept { return n_; }
  int dim() const noexcept { return M_ + 2 * n_; }
  bool is_standard() const noexcept { return order_.empty(); }
  const std::vector<int>& order() const noexcept { return order_; }
  int standard_index(int i) const noexcept { return order_.empty() ? i : order_[static_cast<std::size_t>(i)]; }
  /// The same space in the standard bosons-first basis.
  GradedSpace standard() const { return {M_, n_}; }
  /// Relabel so that new vector i is current vector perm[i].
  GradedSpace relabeled(const std::vector<int>& perm) const;

  int grade(int i) const noexcept { return grade_[static_cast<std::size_t>(i)]; }
  /// Index conjugation: bosons i -> M-1-i, fermions M+k -> M+2n-1-k (standard basis).
  int conj(int i) const noexcept { return conj_[static_cast<std::size_t>(i)]; }
  int theta(int i, ThetaPattern p = kFrozenConvention.theta) const noexcept;
  int transpose_sign(int i, int j, TransposeSign s = kFrozenConvention.sign) const noexcept;

  friend bool operator==(const GradedSpace& a, const GradedSpace& b) {
    return a.M_ == b.M_ && a.n_ == b.n_ && a.order_ == b.order_;
  }

 private:
  void fill();
  int M_ = 0;
  int n_ = 0;
  std::vector<int> order_;
  std::vector<int> grade_;
  std::vector<int> conj_;
};

}  // namespace ospchain
