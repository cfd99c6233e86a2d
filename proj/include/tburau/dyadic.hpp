#pragma once

#include <algorithm>
#include <cassert>
#include <string>
#include <vector>

#include "tburau/bigint.hpp"
#include "tburau/errors.hpp"

namespace tburau {

// Signed dyadic rational num / 2^level in canonical form:
// level == 0, or num is odd.
class Dyadic {
public:
  Dyadic() = default;
  Dyadic(long long num, int level = 0) : num_(num), level_(level) { normalize(); }
  Dyadic(BigInt num, int level) : num_(std::move(num)), level_(level) { normalize(); }

  const BigInt& num() const { return num_; }
  int level() const { return level_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_integer() const { return level_ == 0; }

  friend Dyadic operator+(const Dyadic& a, const Dyadic& b) {
    int l = std::max(a.level_, b.level_);
    return Dyadic(a.num_.shl(unsigned(l - a.level_)) + b.num_.shl(unsigned(l - b.level_)), l);
  }
  friend Dyadic operator-(const Dyadic& a, const Dyadic& b) {
    int l = std::max(a.level_, b.level_);
    return Dyadic(a.num_.shl(unsigned(l - a.level_)) - b.num_.shl(unsigned(l - b.level_)), l);
  }
  friend Dyadic operator-(const Dyadic& a) { return Dyadic(-a.num_, a.level_); }

  // value * 2^k for any integer k
  Dyadic scaled(int k) const {
    if (k >= 0) {
      int drop = std::min(k, level_);
      return Dyadic(num_.shl(unsigned(k - drop)), level_ - drop);
    }
    return Dyadic(num_, level_ - k);
  }

  friend bool operator==(const Dyadic& a, const Dyadic& b) {
    return a.level_ == b.level_ && a.num_ == b.num_;
  }
  friend std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b) {
    int l = std::max(a.level_, b.level_);
    return a.num_.shl(unsigned(l - a.level_)) <=> b.num_.shl(unsigned(l - b.level_));
  }

  // representative in [0,1) under x ~ x+1
  Dyadic mod1() const {
    Dyadic x = *this;
    Dyadic one(1);
    int guard = 0;
    while (x.num_.negative()) { x = x + one; if (++guard > 1 << 20) throw InvariantViolation("mod1 runaway"); }
    while (!(x < one)) { x = x - one; if (++guard > 1 << 20) throw InvariantViolation("mod1 runaway"); }
    return x;
  }

  std::string to_string() const {
    if (level_ == 0) return num_.to_string();
    return num_.to_string() + "/2^" + std::to_string(level_);
  }

private:
  void normalize() {
    if (num_.is_zero()) { level_ = 0; return; }
    while (level_ > 0 && !num_.odd()) { num_ = num_.half(); --level_; }
    if (level_ < 0) { num_ = num_.shl(unsigned(-level_)); level_ = 0; }
  }
  BigInt num_;
  int level_ = 0;
};

// standard dyadic interval [k/2^n, (k+1)/2^n)
struct DyadicInterval {
  Dyadic left;
  int level = 0;

  Dyadic right() const { return left + Dyadic(1, level); }
  Dyadic midpoint() const { return left + Dyadic(1, level + 1); }
  bool contains(const Dyadic& x) const { return !(x < left) && x < right(); }
  DyadicInterval first_half() const { return {left, level + 1}; }
  DyadicInterval second_half() const { return {left + Dyadic(1, level + 1), level + 1}; }
  friend bool operator==(const DyadicInterval&, const DyadicInterval&) = default;
};

// Piecewise dyadic affine increasing bijection of the circle [0,1]/0~1.
// Piece i acts on [left_i, left_{i+1}) by x -> 2^slope_log2 * x + shift, with
// the image contained in [0,1) (construction always splits at preimages of 0).
// Normal form merges adjacent pieces carrying the same affine law, so
// structural equality is map equality.
class PLMap {
public:
  struct Piece {
    Dyadic left;
    int slope_log2 = 0;
    Dyadic shift;
    friend bool operator==(const Piece&, const Piece&) = default;
  };

  PLMap() : pieces_{Piece{Dyadic(0), 0, Dyadic(0)}} {}  // identity

  explicit PLMap(std::vector<Piece> pieces) : pieces_(std::move(pieces)) {
    if (pieces_.empty() || !pieces_.front().left.is_zero())
      throw InvariantViolation("PLMap pieces must tile [0,1) starting at 0");
    merge();
    validate();
  }

  static PLMap identity() { return PLMap(); }

  static PLMap rotation(const Dyadic& amount) {
    Dyadic a = amount.mod1();
    if (a.is_zero()) return identity();
    std::vector<Piece> ps;
    // [0, 1-a) -> [a, 1), then [1-a, 1) -> [0, a)
    ps.push_back({Dyadic(0), 0, a});
    ps.push_back({Dyadic(1) - a, 0, a - Dyadic(1)});
    return PLMap(std::move(ps));
  }

  const std::vector<Piece>& pieces() const { return pieces_; }

  Dyadic piece_right(size_t i) const {
    return i + 1 < pieces_.size() ? pieces_[i + 1].left : Dyadic(1);
  }

  size_t piece_index(const Dyadic& x) const {
    assert(!x.num().negative() && x < Dyadic(1));
    size_t lo = 0, hi = pieces_.size();
    while (hi - lo > 1) {
      size_t mid = (lo + hi) / 2;
      if (x < pieces_[mid].left) hi = mid; else lo = mid;
    }
    return lo;
  }

  Dyadic eval(const Dyadic& xin) const {
    Dyadic x = xin.mod1();
    const Piece& p = pieces_[piece_index(x)];
    return x.scaled(p.slope_log2) + p.shift;
  }

  PLMap inverse() const {
    std::vector<Piece> inv;
    inv.reserve(pieces_.size());
    for (size_t i = 0; i < pieces_.size(); ++i) {
      const Piece& p = pieces_[i];
      // y = 2^s x + c  =>  x = 2^-s y - 2^-s c
      inv.push_back({(pieces_[i].left.scaled(p.slope_log2) + p.shift),
                     -p.slope_log2, (-p.shift).scaled(-p.slope_log2)});
    }
    std::sort(inv.begin(), inv.end(),
              [](const Piece& a, const Piece& b) { return a.left < b.left; });
    return PLMap(std::move(inv));
  }

  // (f o g)(x) = f(g(x))
  friend PLMap compose(const PLMap& f, const PLMap& g) {
    PLMap ginv = g.inverse();
    std::vector<Dyadic> cuts;
    for (const auto& p : g.pieces_) cuts.push_back(p.left);
    for (const auto& p : f.pieces_) cuts.push_back(ginv.eval(p.left));
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    std::vector<Piece> ps;
    for (const Dyadic& c : cuts) {
      const Piece& pg = g.pieces_[g.piece_index(c)];
      Dyadic mid = c.scaled(pg.slope_log2) + pg.shift;
      const Piece& pf = f.pieces_[f.piece_index(mid)];
      int s = pg.slope_log2 + pf.slope_log2;
      Dyadic shift = pg.shift.scaled(pf.slope_log2) + pf.shift;
      ps.push_back({c, s, shift});
    }
    return PLMap(std::move(ps));
  }

  // log2 of the one-sided derivatives at x, plus their jump
  struct SlopeData {
    int log_left;
    int log_right;
    int jump;  // log_right - log_left
  };
  SlopeData slopes_at(const Dyadic& xin) const {
    Dyadic x = xin.mod1();
    size_t i = piece_index(x);
    int right = pieces_[i].slope_log2;
    int left;
    if (x == pieces_[i].left) {
      // left derivative comes from the preceding piece, wrapping at 0 ~ 1
      left = pieces_[(i + pieces_.size() - 1) % pieces_.size()].slope_log2;
    } else {
      left = right;
    }
    return {left, right, right - left};
  }

  // points of [0,1) where the slope jumps (subset of the piece seams)
  std::vector<Dyadic> slope_jump_points() const {
    std::vector<Dyadic> out;
    for (const auto& p : pieces_) {
      if (slopes_at(p.left).jump != 0) out.push_back(p.left);
    }
    return out;
  }

  std::vector<Dyadic> seams() const {
    std::vector<Dyadic> out;
    for (const auto& p : pieces_) out.push_back(p.left);
    return out;
  }

  friend bool operator==(const PLMap& a, const PLMap& b) { return a.pieces_ == b.pieces_; }

private:
  void merge() {
    std::vector<Piece> out;
    for (const auto& p : pieces_) {
      if (!out.empty() && out.back().slope_log2 == p.slope_log2 && out.back().shift == p.shift)
        continue;
      out.push_back(p);
    }
    pieces_ = std::move(out);
  }
  void validate() const {
    Dyadic zero(0), one(1);
    for (size_t i = 0; i < pieces_.size(); ++i) {
      if (i + 1 < pieces_.size() && !(pieces_[i].left < pieces_[i + 1].left))
        throw InvariantViolation("PLMap pieces out of order");
      const Piece& p = pieces_[i];
      Dyadic lo = p.left.scaled(p.slope_log2) + p.shift;
      Dyadic hi = piece_right(i).scaled(p.slope_log2) + p.shift;
      if (lo.num().negative() || one < hi)
        throw InvariantViolation("PLMap piece image leaves [0,1)");
    }
  }

  std::vector<Piece> pieces_;
};

}  // namespace tburau
