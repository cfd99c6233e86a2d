#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <vector>

#include "tburau/errors.hpp"
#include "tburau/laurent.hpp"

namespace tburau {

// Finite matrix over Z[t,t^-1] with declared, ordered row/column label sets.
// Entries absent from the map are zero. Multiplication requires the column
// labels of the left factor to equal the row labels of the right factor.
template <typename Key>
class KeyedMatrix {
public:
  KeyedMatrix() = default;
  KeyedMatrix(std::vector<Key> rows, std::vector<Key> cols)
      : rows_(std::move(rows)), cols_(std::move(cols)) {}

  static KeyedMatrix identity(const std::vector<Key>& labels) {
    KeyedMatrix m(labels, labels);
    for (size_t i = 0; i < labels.size(); ++i) m.set(i, i, LaurentPoly(1));
    return m;
  }

  const std::vector<Key>& rows() const { return rows_; }
  const std::vector<Key>& cols() const { return cols_; }
  size_t n_rows() const { return rows_.size(); }
  size_t n_cols() const { return cols_.size(); }

  void set(size_t r, size_t c, const LaurentPoly& v) {
    if (v.is_zero()) entries_.erase({r, c});
    else entries_[{r, c}] = v;
  }
  void add(size_t r, size_t c, const LaurentPoly& v) { set(r, c, at(r, c) + v); }

  LaurentPoly at(size_t r, size_t c) const {
    auto it = entries_.find({r, c});
    return it == entries_.end() ? LaurentPoly() : it->second;
  }

  size_t row_index(const Key& k) const {
    auto it = std::find(rows_.begin(), rows_.end(), k);
    if (it == rows_.end()) throw DimensionError("row label not present");
    return static_cast<size_t>(it - rows_.begin());
  }
  size_t col_index(const Key& k) const {
    auto it = std::find(cols_.begin(), cols_.end(), k);
    if (it == cols_.end()) throw DimensionError("column label not present");
    return static_cast<size_t>(it - cols_.begin());
  }

  const std::map<std::pair<size_t, size_t>, LaurentPoly>& entries() const { return entries_; }

  friend KeyedMatrix operator*(const KeyedMatrix& a, const KeyedMatrix& b) {
    if (a.cols_ != b.rows_)
      throw DimensionError("index-set mismatch in matrix product");
    KeyedMatrix r(a.rows_, b.cols_);
    // sparse row-by-entry accumulation
    for (const auto& [rc, va] : a.entries_) {
      for (size_t c = 0; c < b.cols_.size(); ++c) {
        LaurentPoly vb = b.at(rc.second, c);
        if (vb.is_zero()) continue;
        r.add(rc.first, c, va * vb);
      }
    }
    return r;
  }

  friend KeyedMatrix operator+(const KeyedMatrix& a, const KeyedMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
      throw DimensionError("index-set mismatch in matrix sum");
    KeyedMatrix r = a;
    for (const auto& [rc, v] : b.entries_) r.add(rc.first, rc.second, v);
    return r;
  }

  friend bool operator==(const KeyedMatrix& a, const KeyedMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.entries_ == b.entries_;
  }

private:
  std::vector<Key> rows_, cols_;
  std::map<std::pair<size_t, size_t>, LaurentPoly> entries_;
};

using LaurentMatrix = KeyedMatrix<long long>;

namespace detail {

// determinant of the k x k block given by `rows` (bitmask selects active rows,
// expansion along the first active row, memoised on the column mask)
inline LaurentPoly det_expand(const std::vector<std::vector<LaurentPoly>>& m,
                              unsigned row, unsigned colmask,
                              std::map<std::pair<unsigned, unsigned>, LaurentPoly>& memo) {
  if (colmask == 0) return LaurentPoly(1);
  auto key = std::make_pair(row, colmask);
  auto it = memo.find(key);
  if (it != memo.end()) return it->second;
  LaurentPoly acc;
  int sign = 1;
  for (unsigned c = 0; c < m.size(); ++c) {
    if (!(colmask & (1u << c))) continue;
    if (!m[row][c].is_zero()) {
      LaurentPoly sub = det_expand(m, row + 1, colmask & ~(1u << c), memo);
      LaurentPoly term = m[row][c] * sub;
      acc += sign > 0 ? term : -term;
    }
    sign = -sign;  // parity counts active columns only
  }
  memo.emplace(key, acc);
  return acc;
}

}  // namespace detail

// exact determinant of a small square matrix (dense vector-of-vectors form)
inline LaurentPoly det_small(const std::vector<std::vector<LaurentPoly>>& m) {
  if (m.empty()) return LaurentPoly(1);
  for (const auto& row : m)
    if (row.size() != m.size()) throw DimensionError("det of non-square matrix");
  if (m.size() > 24) throw DimensionError("det_small limited to 24x24");
  std::map<std::pair<unsigned, unsigned>, LaurentPoly> memo;
  return detail::det_expand(m, 0, (1u << m.size()) - 1, memo);
}

// Finite-image correction F: rows supported on a declared finite core R, so
// det(I+F) is the finite sum of the principal minors of F over subsets of R.
template <typename Key>
class Correction {
public:
  Correction() = default;
  Correction(std::vector<Key> core, std::map<std::pair<Key, Key>, LaurentPoly> entries)
      : core_(std::move(core)) {
    for (auto& [rc, v] : entries) {
      if (v.is_zero()) continue;
      if (!in_core(rc.first))
        throw ContractViolation("correction has a nonzero row outside its declared core");
      // columns may sit anywhere; only the core block enters the determinant
      block_[rc] = v;
    }
  }

  const std::vector<Key>& core() const { return core_; }

  LaurentPoly at(const Key& r, const Key& c) const {
    auto it = block_.find({r, c});
    return it == block_.end() ? LaurentPoly() : it->second;
  }

  // det(I+F) = sum over S subseteq core of the principal minor of F on S
  LaurentPoly determinant() const {
    size_t n = core_.size();
    if (n > 20) throw DimensionError("correction core too large for exact determinant");
    std::vector<std::vector<LaurentPoly>> full(n, std::vector<LaurentPoly>(n));
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j) full[i][j] = at(core_[i], core_[j]);
    LaurentPoly total;
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
      std::vector<size_t> idx;
      for (size_t i = 0; i < n; ++i)
        if (mask & (1u << i)) idx.push_back(i);
      std::vector<std::vector<LaurentPoly>> sub(idx.size(), std::vector<LaurentPoly>(idx.size()));
      bool any = idx.empty();
      for (size_t i = 0; i < idx.size(); ++i)
        for (size_t j = 0; j < idx.size(); ++j) {
          sub[i][j] = full[idx[i]][idx[j]];
          if (!sub[i][j].is_zero()) any = true;
        }
      if (!any && !idx.empty()) continue;  // zero minor
      total += det_small(sub);
    }
    return total;
  }

  // (I+F)(I+G) = I + (F + G + F*G); the product core is the union of cores
  friend Correction compose(const Correction& f, const Correction& g) {
    std::set<Key> keys(f.core_.begin(), f.core_.end());
    keys.insert(g.core_.begin(), g.core_.end());
    std::vector<Key> core(keys.begin(), keys.end());
    std::map<std::pair<Key, Key>, LaurentPoly> e;
    auto put = [&e](const Key& r, const Key& c, const LaurentPoly& v) {
      if (v.is_zero()) return;
      auto& slot = e[{r, c}];
      slot += v;
      if (slot.is_zero()) e.erase({r, c});
    };
    for (const auto& [rc, v] : f.block_) put(rc.first, rc.second, v);
    for (const auto& [rc, v] : g.block_) put(rc.first, rc.second, v);
    for (const auto& [rcf, vf] : f.block_)
      for (const auto& [rcg, vg] : g.block_)
        if (rcf.second == rcg.first) put(rcf.first, rcg.second, vf * vg);
    return Correction(core, e);
  }

private:
  bool in_core(const Key& k) const {
    return std::find(core_.begin(), core_.end(), k) != core_.end();
  }
  std::vector<Key> core_;
  std::map<std::pair<Key, Key>, LaurentPoly> block_;
};

}  // namespace tburau
