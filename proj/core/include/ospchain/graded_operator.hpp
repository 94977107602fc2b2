#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "ospchain/errors.hpp"
#include "ospchain/graded_space.hpp"
#include "ospchain/scalar.hpp"

namespace ospchain {

/// Big-endian multi-index helper over a list of factor dimensions.
class MultiIndex {
 public:
  MultiIndex() = default;
  explicit MultiIndex(const std::vector<GradedSpace>& factors);

  std::size_t size() const noexcept { return total_; }
  std::size_t factor_count() const noexcept { return dims_.size(); }
  std::size_t stride(std::size_t f) const noexcept { return strides_[f]; }
  int dim(std::size_t f) const noexcept { return dims_[f]; }
  int digit(std::size_t flat, std::size_t f) const noexcept {
    return static_cast<int>((flat / strides_[f]) % static_cast<std::size_t>(dims_[f]));
  }
  std::vector<int> digits(std::size_t flat) const;
  std::size_t flat(const std::vector<int>& digits) const;

 private:
  std::vector<int> dims_;
  std::vector<std::size_t> strides_;
  std::size_t total_ = 1;
};

inline MultiIndex::MultiIndex(const std::vector<GradedSpace>& factors) {
  dims_.reserve(factors.size());
  for (const auto& f : factors) dims_.push_back(f.dim());
  strides_.assign(dims_.size(), 1);
  total_ = 1;
  for (std::size_t k = dims_.size(); k-- > 0;) {
    strides_[k] = total_;
    total_ *= static_cast<std::size_t>(dims_[k]);
  }
}

inline std::vector<int> MultiIndex::digits(std::size_t flat) const {
  std::vector<int> out(dims_.size());
  for (std::size_t f = 0; f < dims_.size(); ++f) out[f] = digit(flat, f);
  return out;
}

inline std::size_t MultiIndex::flat(const std::vector<int>& digits) const {
  std::size_t out = 0;
  for (std::size_t f = 0; f < dims_.size(); ++f) out += static_cast<std::size_t>(digits[f]) * strides_[f];
  return out;
}

/// Square matrix over S acting on an ordered tensor product of graded
/// spaces. Stored row-sparse with sorted column indices; zero entries are
/// never stored.
template <class S>
class GradedOperator {
 public:
  using Row = std::vector<std::pair<std::uint32_t, S>>;

  GradedOperator() = default;
  GradedOperator(std::vector<GradedSpace> factors, std::vector<std::string> labels = {})
      : factors_(std::move(factors)), labels_(std::move(labels)), index_(factors_) {
    if (labels_.empty()) {
      for (std::size_t k = 0; k < factors_.size(); ++k) labels_.push_back(std::to_string(k + 1));
    }
    if (labels_.size() != factors_.size()) throw ValidationError("label count does not match factor count");
    rows_.resize(index_.size());
  }

  static GradedOperator identity(std::vector<GradedSpace> factors, std::vector<std::string> labels = {}) {
    GradedOperator out(std::move(factors), std::move(labels));
    for (std::size_t i = 0; i < out.size(); ++i) out.rows_[i].emplace_back(static_cast<std::uint32_t>(i), ScalarTraits<S>::from(1));
    return out;
  }

  std::size_t size() const noexcept { return index_.size(); }
  const std::vector<GradedSpace>& factors() const noexcept { return factors_; }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  const MultiIndex& index() const noexcept { return index_; }
  const Row& row(std::size_t i) const { return rows_[i]; }
  std::size_t nonzeros() const {
    std::size_t n = 0;
    for (const auto& r : rows_) n += r.size();
    return n;
  }

  /// Position of a factor label; throws DomainError when unknown.
  std::size_t factor_position(const std::string& label) const {
    auto it = std::find(labels_.begin(), labels_.end(), label);
    if (it == labels_.end()) throw DomainError("unknown factor label '" + label + "'");
    return static_cast<std::size_t>(it - labels_.begin());
  }

  GradedOperator with_labels(std::vector<std::string> labels) const {
    if (labels.size() != factors_.size()) throw ValidationError("label count does not match factor count");
    GradedOperator out = *this;
    out.labels_ = std::move(labels);
    return out;
  }

  S get(std::size_t i, std::size_t j) const {
    const Row& r = rows_[i];
    auto it = std::lower_bound(r.begin(), r.end(), j, [](const auto& e, std::size_t c) { return e.first < c; });
    if (it != r.end() && it->first == j) return it->second;
    return ScalarTraits<S>::from(0);
  }

  /// Adds v to entry (i,j).
  void add(std::size_t i, std::size_t j, const S& v) {
    if (ScalarTraits<S>::is_zero(v)) return;
    Row& r = rows_[i];
    auto it = std::lower_bound(r.begin(), r.end(), j, [](const auto& e, std::size_t c) { return e.first < c; });
    if (it != r.end() && it->first == j) {
      it->second += v;
      if (ScalarTraits<S>::is_zero(it->second)) r.erase(it);
    } else {
      r.insert(it, {static_cast<std::uint32_t>(j), v});
    }
  }

  void set(std::size_t i, std::size_t j, const S& v) {
    Row& r = rows_[i];
    auto it = std::lower_bound(r.begin(), r.end(), j, [](const auto& e, std::size_t c) { return e.first < c; });
    bool present = it != r.end() && it->first == j;
    if (ScalarTraits<S>::is_zero(v)) {
      if (present) r.erase(it);
    } else if (present) {
      it->second = v;
    } else {
      r.insert(it, {static_cast<std::uint32_t>(j), v});
    }
  }

  /// Replaces a whole row; entries must be sorted by column and non-zero.
  void set_row(std::size_t i, Row r) { rows_[i] = std::move(r); }

  bool is_zero() const {
    for (const auto& r : rows_) {
      if (!r.empty()) return false;
    }
    return true;
  }

  /// Largest entry magnitude (|z| for floats, sqrt of the norm for exact scalars).
  double max_magnitude() const {
    double m = 0.0;
    for (const auto& r : rows_) {
      for (const auto& e : r) m = std::max(m, ScalarTraits<S>::magnitude(e.second));
    }
    return m;
  }

  /// Exact entry of largest max(|re|,|im|); zero when the operator vanishes.
  S max_entry() const
    requires std::same_as<S, GaussianRational>
  {
    S best;
    mpq_class bm = 0;
    for (const auto& r : rows_) {
      for (const auto& e : r) {
        mpq_class m = e.second.max_abs_component();
        if (m > bm) {
          bm = m;
          best = e.second;
        }
      }
    }
    return best;
  }

  /// True when the operator equals c times the identity; stores c.
  bool is_scalar_identity(S* c = nullptr) const {
    S value = size() ? get(0, 0) : ScalarTraits<S>::from(0);
    const bool zero = ScalarTraits<S>::is_zero(value);
    for (std::size_t i = 0; i < size(); ++i) {
      const Row& r = rows_[i];
      if (zero) {
        if (!r.empty()) return false;
        continue;
      }
      if (r.size() != 1 || r[0].first != i || !(r[0].second == value)) return false;
    }
    if (c) *c = value;
    return true;
  }

  template <class T, class F>
  GradedOperator<T> map(F&& f) const {
    GradedOperator<T> out(factors_, labels_);
    for (std::size_t i = 0; i < size(); ++i) {
      typename GradedOperator<T>::Row r;
      for (const auto& e : rows_[i]) {
        T v = f(e.second);
        if (!ScalarTraits<T>::is_zero(v)) r.emplace_back(e.first, std::move(v));
      }
      out.set_row(i, std::move(r));
    }
    return out;
  }

  GradedOperator& operator+=(const GradedOperator& o) { return combine(o, 1); }
  GradedOperator& operator-=(const GradedOperator& o) { return combine(o, -1); }
  GradedOperator& operator*=(const S& s) {
    if (ScalarTraits<S>::is_zero(s)) {
      for (auto& r : rows_) r.clear();
      return *this;
    }
    for (auto& r : rows_) {
      for (auto& e : r) e.second *= s;
    }
    return *this;
  }

  friend GradedOperator operator+(GradedOperator a, const GradedOperator& b) { return a += b; }
  friend GradedOperator operator-(GradedOperator a, const GradedOperator& b) { return a -= b; }
  friend GradedOperator operator*(GradedOperator a, const S& s) { return a *= s; }
  friend GradedOperator operator*(const S& s, GradedOperator a) { return a *= s; }

  friend GradedOperator operator*(const GradedOperator& a, const GradedOperator& b) {
    a.require_same_factors(b);
    GradedOperator out(a.factors_, a.labels_);
    const std::size_t n = a.size();
    std::vector<S> acc(n, ScalarTraits<S>::from(0));
    std::vector<char> mark(n, 0);
    std::vector<std::uint32_t> touched;
    for (std::size_t i = 0; i < n; ++i) {
      touched.clear();
      for (const auto& [k, av] : a.rows_[i]) {
        for (const auto& [j, bv] : b.rows_[k]) {
          if (!mark[j]) {
            mark[j] = 1;
            touched.push_back(j);
            acc[j] = av * bv;
          } else {
            acc[j] += av * bv;
          }
        }
      }
      std::sort(touched.begin(), touched.end());
      Row r;
      r.reserve(touched.size());
      for (std::uint32_t j : touched) {
        mark[j] = 0;
        if (!ScalarTraits<S>::is_zero(acc[j])) r.emplace_back(j, std::move(acc[j]));
        acc[j] = ScalarTraits<S>::from(0);
      }
      out.rows_[i] = std::move(r);
    }
    return out;
  }

  friend bool operator==(const GradedOperator& a, const GradedOperator& b) {
    return a.factors_ == b.factors_ && a.rows_ == b.rows_;
  }
  friend bool operator!=(const GradedOperator& a, const GradedOperator& b) { return !(a == b); }

  /// Matrix-vector product on a dense vector.
  std::vector<S> apply(const std::vector<S>& v) const {
    if (v.size() != size()) throw ValidationError("vector size does not match operator");
    std::vector<S> out(size(), ScalarTraits<S>::from(0));
    for (std::size_t i = 0; i < size(); ++i) {
      for (const auto& [j, a] : rows_[i]) out[i] += a * v[j];
    }
    return out;
  }

  /// {"factors":[{"M":..,"n":..}],"entries":[[..]]}; rows are dense lists.
  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json out;
    out["factors"] = nlohmann::ordered_json::array();
    for (const auto& f : factors_) {
      nlohmann::ordered_json jf{{"M", f.M()}, {"n", f.n()}};
      if (!f.is_standard()) jf["order"] = f.order();
      out["factors"].push_back(jf);
    }
    out["labels"] = labels_;
    nlohmann::ordered_json entries = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < size(); ++i) {
      nlohmann::ordered_json row = nlohmann::ordered_json::array();
      std::size_t next = 0;
      for (const auto& [j, v] : rows_[i]) {
        for (; next < j; ++next) row.push_back("0");
        row.push_back(ScalarTraits<S>::render(v));
        next = j + 1;
      }
      for (; next < size(); ++next) row.push_back("0");
      entries.push_back(std::move(row));
    }
    out["entries"] = std::move(entries);
    return out;
  }

  void require_same_factors(const GradedOperator& o) const {
    if (factors_ != o.factors_) throw DomainError("operators act on different factor lists");
  }

 private:
  GradedOperator& combine(const GradedOperator& o, int sign) {
    require_same_factors(o);
    for (std::size_t i = 0; i < size(); ++i) {
      const Row& b = o.rows_[i];
      if (b.empty()) continue;
      Row& a = rows_[i];
      Row r;
      r.reserve(a.size() + b.size());
      std::size_t x = 0, y = 0;
      while (x < a.size() || y < b.size()) {
        if (y == b.size() || (x < a.size() && a[x].first < b[y].first)) {
          r.push_back(std::move(a[x++]));
        } else if (x == a.size() || b[y].first < a[x].first) {
          r.emplace_back(b[y].first, sign > 0 ? b[y].second : -b[y].second);
          ++y;
        } else {
          S v = std::move(a[x].second);
          if (sign > 0) {
            v += b[y].second;
          } else {
            v -= b[y].second;
          }
          if (!ScalarTraits<S>::is_zero(v)) r.emplace_back(a[x].first, std::move(v));
          ++x;
          ++y;
        }
      }
      a = std::move(r);
    }
    return *this;
  }

  std::vector<GradedSpace> factors_;
  std::vector<std::string> labels_;
  MultiIndex index_;
  std::vector<Row> rows_;
};

template <class S>
GradedOperator<S> commutator(const GradedOperator<S>& a, const GradedOperator<S>& b) {
  return a * b - b * a;
}

/// Build a GradedOperator from a dense row-major matrix of GaussianRationals.
template <class S>
GradedOperator<S> from_dense(std::vector<GradedSpace> factors, const std::vector<std::vector<S>>& m,
                             std::vector<std::string> labels = {}) {
  GradedOperator<S> out(std::move(factors), std::move(labels));
  if (m.size() != out.size()) throw ValidationError("dense matrix has wrong size");
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i].size() != out.size()) throw ValidationError("dense matrix has wrong size");
    for (std::size_t j = 0; j < m[i].size(); ++j) out.set(i, j, m[i][j]);
  }
  return out;
}

}  // namespace ospchain
