#pragma once

#include <string>
#include <vector>

#include "ospchain/graded_operator.hpp"

namespace ospchain {

namespace detail {

inline int sign_of(int parity) { return (parity & 1) ? -1 : 1; }

/// Total parity of a multi-index restricted to factors [lo, hi).
inline int parity_range(const MultiIndex& mi, const std::vector<GradedSpace>& f, std::size_t flat, std::size_t lo,
                        std::size_t hi) {
  int p = 0;
  for (std::size_t x = lo; x < hi; ++x) p += f[x].grade(mi.digit(flat, x));
  return p & 1;
}

/// Koszul sign relating ordinary matrix entries to graded coefficients of
/// E_{i1 j1} (x) ... (x) E_{iN jN}: prod_{x<y} (-1)^{([i_x]+[j_x])[i_y]}.
inline int koszul_sign(const MultiIndex& mi, const std::vector<GradedSpace>& f, std::size_t row, std::size_t col) {
  int acc = 0;
  int e = 0;
  for (std::size_t y = 0; y < f.size(); ++y) {
    int gi = f[y].grade(mi.digit(row, y));
    int gj = f[y].grade(mi.digit(col, y));
    e += acc * gi;
    acc ^= (gi + gj) & 1;
  }
  return sign_of(e);
}

}  // namespace detail

/// Super permutation on space (x) space: P(v (x) w) = (-1)^{[v][w]} w (x) v.
template <class S>
GradedOperator<S> build_P(const GradedSpace& space, std::vector<std::string> labels = {"1", "2"}) {
  GradedOperator<S> out({space, space}, std::move(labels));
  const std::size_t d = static_cast<std::size_t>(space.dim());
  for (int i = 0; i < space.dim(); ++i) {
    for (int k = 0; k < space.dim(); ++k) {
      int s = detail::sign_of(space.grade(i) * space.grade(k));
      out.set(static_cast<std::size_t>(i) * d + static_cast<std::size_t>(k),
              static_cast<std::size_t>(k) * d + static_cast<std::size_t>(i), ScalarTraits<S>::from(s));
    }
  }
  return out;
}

/// Graded tensor product: (A (x) B)_{(I,K),(J,L)} = (-1)^{[K]([I]+[J])} A_IJ B_KL.
template <class S>
GradedOperator<S> super_kron(const GradedOperator<S>& a, const GradedOperator<S>& b) {
  std::vector<GradedSpace> f = a.factors();
  f.insert(f.end(), b.factors().begin(), b.factors().end());
  std::vector<std::string> labels = a.labels();
  labels.insert(labels.end(), b.labels().begin(), b.labels().end());
  GradedOperator<S> out(f, labels);
  const std::size_t nb = b.size();
  const std::size_t fa = a.factors().size();
  const std::size_t fb = b.factors().size();
  std::vector<int> pb(nb);
  for (std::size_t k = 0; k < nb; ++k) pb[k] = detail::parity_range(b.index(), b.factors(), k, 0, fb);
  for (std::size_t i = 0; i < a.size(); ++i) {
    int pi = detail::parity_range(a.index(), a.factors(), i, 0, fa);
    for (std::size_t k = 0; k < nb; ++k) {
      typename GradedOperator<S>::Row row;
      for (const auto& [j, av] : a.row(i)) {
        int pj = detail::parity_range(a.index(), a.factors(), j, 0, fa);
        int s = detail::sign_of(pb[k] * (pi + pj));
        for (const auto& [l, bv] : b.row(k)) {
          S v = av * bv;
          if (s < 0) v = -v;
          row.emplace_back(static_cast<std::uint32_t>(j * nb + l), std::move(v));
        }
      }
      out.set_row(i * nb + k, std::move(row));
    }
  }
  return out;
}

/// str A = sum_i (-1)^{[i]} A_ii over all factors.
template <class S>
S super_trace(const GradedOperator<S>& a) {
  S acc = ScalarTraits<S>::from(0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    S v = a.get(i, i);
    if (ScalarTraits<S>::is_zero(v)) continue;
    if (detail::parity_range(a.index(), a.factors(), i, 0, a.factors().size())) {
      acc -= v;
    } else {
      acc += v;
    }
  }
  return acc;
}

namespace detail {

struct Contraction {
  std::vector<GradedSpace> rest;
  std::vector<std::string> rest_labels;
  MultiIndex rest_index;
  std::size_t pos;
};

template <class S>
Contraction contraction_for(const GradedOperator<S>& a, const std::string& label) {
  Contraction c;
  c.pos = a.factor_position(label);
  for (std::size_t k = 0; k < a.factors().size(); ++k) {
    if (k == c.pos) continue;
    c.rest.push_back(a.factors()[k]);
    c.rest_labels.push_back(a.labels()[k]);
  }
  if (c.rest.empty()) throw DomainError("cannot contract the only factor; use super_trace");
  c.rest_index = MultiIndex(c.rest);
  return c;
}

/// Flat index on the remaining factors after dropping factor `pos`.
inline std::size_t drop_factor(const MultiIndex& full, std::size_t flat, std::size_t pos) {
  std::size_t hi = flat / (full.stride(pos) * static_cast<std::size_t>(full.dim(pos)));
  std::size_t lo = flat % full.stride(pos);
  return hi * full.stride(pos) + lo;
}

}  // namespace detail

/// Contracts one factor with the super-trace sign; returns the operator on
/// the remaining factors.
template <class S>
GradedOperator<S> partial_super_trace(const GradedOperator<S>& a, const std::string& label) {
  auto c = detail::contraction_for(a, label);
  GradedOperator<S> out(c.rest, c.rest_labels);
  const auto& mi = a.index();
  const auto& f = a.factors();
  for (std::size_t i = 0; i < a.size(); ++i) {
    int ai = mi.digit(i, c.pos);
    int ga = f[c.pos].grade(ai);
    int pre_i = detail::parity_range(mi, f, i, 0, c.pos);
    for (const auto& [j, v] : a.row(i)) {
      if (mi.digit(j, c.pos) != ai) continue;
      int pre_j = detail::parity_range(mi, f, j, 0, c.pos);
      int s = detail::sign_of(ga + ga * (pre_i + pre_j));
      out.add(detail::drop_factor(mi, i, c.pos), detail::drop_factor(mi, j, c.pos), s < 0 ? -v : v);
    }
  }
  return out;
}

/// partial_super_trace(a * b, label) without forming the full product.
template <class S>
GradedOperator<S> partial_super_trace_of_product(const GradedOperator<S>& a, const GradedOperator<S>& b,
                                                 const std::string& label) {
  a.require_same_factors(b);
  auto c = detail::contraction_for(a, label);
  GradedOperator<S> out(c.rest, c.rest_labels);
  const auto& mi = a.index();
  const auto& f = a.factors();
  const std::size_t n = a.size();
  const std::size_t nr = c.rest_index.size();
  std::vector<int> pre(n);
  std::vector<int> digit(n);
  for (std::size_t i = 0; i < n; ++i) {
    pre[i] = detail::parity_range(mi, f, i, 0, c.pos);
    digit[i] = mi.digit(i, c.pos);
  }
  std::vector<S> acc(nr, ScalarTraits<S>::from(0));
  std::vector<char> mark(nr, 0);
  std::vector<std::uint32_t> touched;
  std::size_t current = static_cast<std::size_t>(-1);
  auto flush = [&](std::size_t row) {
    std::sort(touched.begin(), touched.end());
    typename GradedOperator<S>::Row r;
    for (std::uint32_t j : touched) {
      mark[j] = 0;
      if (!ScalarTraits<S>::is_zero(acc[j])) r.emplace_back(j, std::move(acc[j]));
      acc[j] = ScalarTraits<S>::from(0);
    }
    touched.clear();
    out.set_row(row, std::move(r));
  };
  // Rows of the result are visited in increasing order of the dropped index,
  // so iterate over (rest row, aux digit) and flush once per rest row.
  for (std::size_t r = 0; r < nr; ++r) {
    (void)current;
    for (int ad = 0; ad < f[c.pos].dim(); ++ad) {
      std::size_t hi = r / mi.stride(c.pos);
      std::size_t lo = r % mi.stride(c.pos);
      std::size_t i = hi * mi.stride(c.pos) * static_cast<std::size_t>(f[c.pos].dim()) +
                      static_cast<std::size_t>(ad) * mi.stride(c.pos) + lo;
      int ga = f[c.pos].grade(ad);
      for (const auto& [k, av] : a.row(i)) {
        for (const auto& [j, bv] : b.row(k)) {
          if (digit[j] != ad) continue;
          int s = detail::sign_of(ga + ga * (pre[i] + pre[j]));
          std::size_t jr = detail::drop_factor(mi, j, c.pos);
          S v = av * bv;
          if (s < 0) v = -v;
          if (!mark[jr]) {
            mark[jr] = 1;
            touched.push_back(static_cast<std::uint32_t>(jr));
            acc[jr] = std::move(v);
          } else {
            acc[jr] += v;
          }
        }
      }
    }
    flush(r);
  }
  return out;
}

/// Super transpose in factor `label` only, E_ab -> s(a,b) theta_a theta_b E_{conj b, conj a}.
template <class S>
GradedOperator<S> partial_super_transpose(const GradedOperator<S>& a, const std::string& label,
                                          SupertransposeConvention conv = kFrozenConvention) {
  const std::size_t p = a.factor_position(label);
  const auto& mi = a.index();
  const auto& f = a.factors();
  const GradedSpace& sp = f[p];
  GradedOperator<S> out(f, a.labels());
  for (std::size_t i = 0; i < a.size(); ++i) {
    int ai = mi.digit(i, p);
    for (const auto& [j, v] : a.row(i)) {
      int bj = mi.digit(j, p);
      int s = detail::koszul_sign(mi, f, i, j) * sp.transpose_sign(ai, bj, conv.sign) * sp.theta(ai, conv.theta) *
              sp.theta(bj, conv.theta);
      std::size_t ni = i + (static_cast<std::size_t>(sp.conj(bj)) - static_cast<std::size_t>(ai)) * mi.stride(p);
      std::size_t nj = j + (static_cast<std::size_t>(sp.conj(ai)) - static_cast<std::size_t>(bj)) * mi.stride(p);
      s *= detail::koszul_sign(mi, f, ni, nj);
      out.add(ni, nj, s < 0 ? -v : v);
    }
  }
  return out;
}

/// Super transpose in every factor.
template <class S>
GradedOperator<S> super_transpose(const GradedOperator<S>& a, SupertransposeConvention conv = kFrozenConvention) {
  GradedOperator<S> out = a;
  for (const auto& l : a.labels()) out = partial_super_transpose(out, l, conv);
  return out;
}

/// Q = P^{t1}.
template <class S>
GradedOperator<S> build_Q(const GradedSpace& space, SupertransposeConvention conv = kFrozenConvention) {
  return partial_super_transpose(build_P<S>(space), "1", conv);
}

/// Exchanges the two factors of a two-factor operator: P O P with the graded swap.
template <class S>
GradedOperator<S> swap_factors(const GradedOperator<S>& op) {
  if (op.factors().size() != 2) throw DomainError("swap_factors needs a two-factor operator");
  const GradedSpace& v = op.factors()[0];
  const GradedSpace& w = op.factors()[1];
  GradedOperator<S> out({w, v}, {op.labels()[1], op.labels()[0]});
  const std::size_t dw = static_cast<std::size_t>(w.dim());
  const std::size_t dv = static_cast<std::size_t>(v.dim());
  for (std::size_t r = 0; r < op.size(); ++r) {
    int a = static_cast<int>(r / dw), c = static_cast<int>(r % dw);
    for (const auto& [col, val] : op.row(r)) {
      int b = static_cast<int>(col / dw), d = static_cast<int>(col % dw);
      int s = detail::sign_of(v.grade(a) * w.grade(c) + v.grade(b) * w.grade(d));
      out.add(static_cast<std::size_t>(c) * dv + static_cast<std::size_t>(a),
              static_cast<std::size_t>(d) * dv + static_cast<std::size_t>(b), s < 0 ? -val : val);
    }
  }
  return out;
}

/// Places a two-factor operator on the chain factors labeled first/second
/// (identity elsewhere), with the Koszul signs of transporting its legs
/// across intermediate and trailing factors. When `first` comes after
/// `second` in the chain, the swapped operator is embedded.
template <class S>
GradedOperator<S> embed(const GradedOperator<S>& op, const std::string& first, const std::string& second,
                        const std::vector<GradedSpace>& chain, const std::vector<std::string>& chain_labels) {
  if (op.factors().size() != 2) throw DomainError("embed needs a two-factor operator");
  if (first == second) throw DomainError("embedding positions must differ");
  GradedOperator<S> out(chain, chain_labels);
  std::size_t p = out.factor_position(first);
  std::size_t q = out.factor_position(second);
  const GradedOperator<S>* src = &op;
  GradedOperator<S> swapped;
  if (p > q) {
    swapped = swap_factors(op);
    src = &swapped;
    std::swap(p, q);
  }
  if (!(src->factors()[0] == chain[p]) || !(src->factors()[1] == chain[q])) {
    throw DomainError("operator spaces do not match the chain factors");
  }
  const MultiIndex& mi = out.index();
  const std::size_t nf = chain.size();
  const std::size_t dq = static_cast<std::size_t>(chain[q].dim());
  // Enumerate the spectator digits once; each contributes a base flat index.
  std::vector<std::size_t> spectators;
  std::vector<int> mid_parity, tail_parity;
  for (std::size_t flat = 0; flat < mi.size(); ++flat) {
    if (mi.digit(flat, p) != 0 || mi.digit(flat, q) != 0) continue;
    spectators.push_back(flat);
    mid_parity.push_back(detail::parity_range(mi, chain, flat, p + 1, q));
    tail_parity.push_back(detail::parity_range(mi, chain, flat, q + 1, nf));
  }
  std::vector<std::vector<std::pair<std::size_t, S>>> staging(mi.size());
  for (std::size_t r = 0; r < src->size(); ++r) {
    int a = static_cast<int>(r / dq), c = static_cast<int>(r % dq);
    for (const auto& [col, val] : src->row(r)) {
      int b = static_cast<int>(col / dq), d = static_cast<int>(col % dq);
      int gab = chain[p].grade(a) + chain[p].grade(b);
      int gall = gab + chain[q].grade(c) + chain[q].grade(d);
      std::size_t roff = static_cast<std::size_t>(a) * mi.stride(p) + static_cast<std::size_t>(c) * mi.stride(q);
      std::size_t coff = static_cast<std::size_t>(b) * mi.stride(p) + static_cast<std::size_t>(d) * mi.stride(q);
      for (std::size_t s = 0; s < spectators.size(); ++s) {
        int sg = detail::sign_of(gab * mid_parity[s] + gall * tail_parity[s]);
        staging[spectators[s] + roff].emplace_back(spectators[s] + coff, sg < 0 ? -val : val);
      }
    }
  }
  for (std::size_t i = 0; i < staging.size(); ++i) {
    auto& st = staging[i];
    std::sort(st.begin(), st.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    typename GradedOperator<S>::Row row;
    for (auto& [j, v] : st) {
      if (!row.empty() && row.back().first == j) {
        row.back().second += v;
      } else {
        row.emplace_back(static_cast<std::uint32_t>(j), std::move(v));
      }
    }
    std::erase_if(row, [](const auto& e) { return ScalarTraits<S>::is_zero(e.second); });
    out.set_row(i, std::move(row));
  }
  return out;
}

/// Similarity transform by basis permutations: new vector k of factor f is
/// old vector perms[f][k]. Factors are relabeled accordingly.
template <class S>
GradedOperator<S> reorder_basis(const GradedOperator<S>& a, const std::vector<std::vector<int>>& perms) {
  if (perms.size() != a.factors().size()) throw ValidationError("one permutation per factor is required");
  std::vector<GradedSpace> nf;
  for (std::size_t f = 0; f < perms.size(); ++f) nf.push_back(a.factors()[f].relabeled(perms[f]));
  GradedOperator<S> out(nf, a.labels());
  const MultiIndex& mi = a.index();
  std::vector<std::size_t> old_of_new(a.size());
  std::vector<std::size_t> new_of_old(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) {
    std::size_t old = 0;
    for (std::size_t f = 0; f < perms.size(); ++f) {
      old += static_cast<std::size_t>(perms[f][static_cast<std::size_t>(mi.digit(k, f))]) * mi.stride(f);
    }
    old_of_new[k] = old;
    new_of_old[old] = k;
  }
  for (std::size_t k = 0; k < a.size(); ++k) {
    typename GradedOperator<S>::Row row;
    for (const auto& [j, v] : a.row(old_of_new[k])) row.emplace_back(static_cast<std::uint32_t>(new_of_old[j]), v);
    std::sort(row.begin(), row.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    out.set_row(k, std::move(row));
  }
  return out;
}

/// Single-factor operator from a function of (row, col).
template <class S, class F>
GradedOperator<S> single_factor(const GradedSpace& space, F&& entry, std::string label = "1") {
  GradedOperator<S> out({space}, {std::move(label)});
  for (int i = 0; i < space.dim(); ++i) {
    for (int j = 0; j < space.dim(); ++j) out.set(static_cast<std::size_t>(i), static_cast<std::size_t>(j), entry(i, j));
  }
  return out;
}

}  // namespace ospchain

namespace ospchain {

/// Places a single-factor operator on the chain factor `label`, identity
/// elsewhere: ordinary entries pick up (-1)^{([a]+[b]) sum_{r>p} [k_r]}.
template <class S>
GradedOperator<S> embed_one(const GradedOperator<S>& op, const std::string& label,
                            const std::vector<GradedSpace>& chain, const std::vector<std::string>& chain_labels) {
  if (op.factors().size() != 1) throw DomainError("embed_one needs a single-factor operator");
  GradedOperator<S> out(chain, chain_labels);
  const std::size_t p = out.factor_position(label);
  if (!(op.factors()[0] == chain[p])) throw DomainError("operator space does not match the chain factor");
  const MultiIndex& mi = out.index();
  const GradedSpace& sp = chain[p];
  for (std::size_t i = 0; i < mi.size(); ++i) {
    int a = mi.digit(i, p);
    int tail = detail::parity_range(mi, chain, i, p + 1, chain.size());
    typename GradedOperator<S>::Row row;
    for (const auto& [b, v] : op.row(static_cast<std::size_t>(a))) {
      std::size_t j = i + (static_cast<std::size_t>(b) - static_cast<std::size_t>(a)) * mi.stride(p);
      int s = detail::sign_of((sp.grade(a) + sp.grade(static_cast<int>(b))) * tail);
      row.emplace_back(static_cast<std::uint32_t>(j), s < 0 ? -v : v);
    }
    out.set_row(i, std::move(row));
  }
  return out;
}

}  // namespace ospchain
